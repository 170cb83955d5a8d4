"""Wildfire detection, localization and cognitive-map forecasting."""

from ._firecast import *  # noqa: F401,F403
from ._firecast import __doc__  # noqa: F401
