#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "firecast/activation.hpp"
#include "firecast/dataset.hpp"
#include "firecast/errors.hpp"
#include "firecast/fcm.hpp"
#include "firecast/gradcheck.hpp"
#include "firecast/image.hpp"
#include "firecast/localizer.hpp"
#include "firecast/loss.hpp"
#include "firecast/model.hpp"
#include "firecast/pipeline.hpp"
#include "firecast/serialize.hpp"
#include "firecast/train.hpp"

namespace py = pybind11;
using namespace firecast;

namespace {

Fcm build_fcm(const std::vector<std::string>& names,
              const std::vector<std::vector<double>>& weights, double lambda,
              bool allow_self_loops, double eps, std::size_t max_iters) {
  std::vector<Concept> concepts;
  for (std::size_t i = 0; i < names.size(); ++i) concepts.push_back({i, names[i]});
  return fcm_build(std::move(concepts), CognitiveMatrix::from_rows(weights),
                   FcmConfig{lambda, allow_self_loops, eps, max_iters});
}

}  // namespace

PYBIND11_MODULE(_firecast, m) {
  m.doc() = "Wildfire detection, localization and cognitive-map forecasting";

  py::register_exception<Error>(m, "FirecastError", PyExc_RuntimeError);

  py::class_<Tensor>(m, "Tensor")
      .def(py::init<Shape, std::vector<double>>(), py::arg("shape"), py::arg("data"))
      .def_readonly("shape", &Tensor::shape)
      .def_readonly("data", &Tensor::data)
      .def("__repr__",
           [](const Tensor& t) { return "Tensor(shape=" + shape_str(t.shape) + ")"; });

  m.def("activation_apply",
        [](double x, const std::string& kind) {
          const ActValue v = activation_apply(x, activation_from_string(kind));
          return py::make_tuple(v.value, v.derivative);
        },
        py::arg("x"), py::arg("kind"), "Returns (value, derivative)");
  m.def("sigmoid", &sigmoid, py::arg("x"));
  m.def("bce",
        [](int label, double p) {
          const BceResult r = bce(label, p);
          return py::make_tuple(r.loss, r.dloss_dp);
        },
        py::arg("label"), py::arg("p"), "Returns (loss, dloss_dp)");

  py::class_<Model>(m, "Model")
      .def("predict", &model_predict, py::arg("image"))
      .def("save", &model_save, py::arg("path"));
  m.def("make_reference_model",
        [](std::size_t height, std::size_t width, std::size_t channels,
           std::uint64_t seed, std::size_t filters, std::size_t kernel,
           std::size_t pool, std::size_t hidden) {
          return make_reference_model({height, width, channels}, seed, filters,
                                      kernel, pool, hidden);
        },
        py::arg("height"), py::arg("width"), py::arg("channels"), py::arg("seed"),
        py::arg("filters") = 8, py::arg("kernel") = 3, py::arg("pool") = 2,
        py::arg("hidden") = 128);
  m.def("load_model", &model_load, py::arg("path"));
  m.def("gradient_check",
        py::overload_cast<const Model&, const Tensor&, int, double>(&gradient_check),
        py::arg("model"), py::arg("probe"), py::arg("label"), py::arg("h") = 1e-5);

  py::class_<Metrics>(m, "Metrics")
      .def_readonly("loss", &Metrics::loss)
      .def_readonly("accuracy", &Metrics::accuracy)
      .def("__repr__", [](const Metrics& m_) {
        return "Metrics(loss=" + std::to_string(m_.loss) +
               ", accuracy=" + std::to_string(m_.accuracy) + ")";
      });

  m.def("train",
        [](Model& model, const std::string& data_dir, double lr, std::size_t epochs,
           std::size_t batch, std::uint64_t seed) {
          const Dataset data = dataset_load(data_dir);
          return train(model, data, TrainConfig{lr, epochs, batch, seed});
        },
        py::arg("model"), py::arg("data_dir"), py::arg("lr") = 0.01,
        py::arg("epochs") = 20, py::arg("batch") = 16, py::arg("seed") = 0);
  m.def("evaluate",
        [](const Model& model, const std::string& data_dir) {
          return evaluate(model, dataset_load(data_dir));
        },
        py::arg("model"), py::arg("data_dir"));
  m.def("synth_generate",
        [](const std::string& out_dir, std::size_t count, std::uint64_t seed,
           std::size_t size) {
          const SynthManifest manifest = synth_generate(out_dir, count, seed, size);
          return py::make_tuple(manifest.fire_files.size(),
                                manifest.nofire_files.size());
        },
        py::arg("out_dir"), py::arg("count"), py::arg("seed"), py::arg("size") = 32);

  py::class_<GrayImage>(m, "GrayImage")
      .def(py::init([](std::size_t width, std::size_t height,
                       std::vector<std::uint8_t> pixels) {
             if (pixels.size() != width * height) {
               throw DimensionError("pixel count does not match width*height");
             }
             return GrayImage{width, height, std::move(pixels)};
           }),
           py::arg("width"), py::arg("height"), py::arg("pixels"))
      .def_readonly("width", &GrayImage::width)
      .def_readonly("height", &GrayImage::height)
      .def_readonly("pixels", &GrayImage::pixels);
  m.def("pgm_load", &pgm_load, py::arg("path"));
  m.def("pgm_save", &pgm_save, py::arg("image"), py::arg("path"));
  m.def("image_to_tensor", &image_to_tensor, py::arg("image"));

  py::class_<BoundingBox>(m, "BoundingBox")
      .def_readonly("x_min", &BoundingBox::x_min)
      .def_readonly("y_min", &BoundingBox::y_min)
      .def_readonly("x_max", &BoundingBox::x_max)
      .def_readonly("y_max", &BoundingBox::y_max)
      .def("area_px", &BoundingBox::area_px);
  py::class_<Detection>(m, "Detection")
      .def_property_readonly("label",
                             [](const Detection& d) {
                               return d.label == FireLabel::Fire ? "fire" : "no_fire";
                             })
      .def_readonly("probability", &Detection::probability)
      .def_readonly("bbox", &Detection::bbox)
      .def_readonly("area_px", &Detection::area_px)
      .def("to_json", &detection_json);
  m.def("threshold_bright",
        [](const GrayImage& image, double quantile) {
          std::vector<std::pair<std::size_t, std::size_t>> out;
          for (const PixelCoord& p : threshold_bright(image, quantile)) {
            out.emplace_back(p.x, p.y);
          }
          return out;
        },
        py::arg("image"), py::arg("quantile") = 0.99);
  m.def("bounding_box",
        [](const std::vector<std::pair<std::size_t, std::size_t>>& coords) {
          std::vector<PixelCoord> pts;
          for (const auto& [x, y] : coords) pts.push_back({x, y});
          return bounding_box(pts);
        },
        py::arg("coords"));
  m.def("detect_fire", &detect_fire, py::arg("model"), py::arg("image"),
        py::arg("quantile") = 0.99);

  py::class_<Fcm>(m, "Fcm")
      .def_property_readonly("size", &Fcm::size)
      .def_property_readonly("concept_names",
                             [](const Fcm& f) {
                               std::vector<std::string> names;
                               for (const Concept& c : f.concepts) names.push_back(c.name);
                               return names;
                             })
      .def("weight", &Fcm::weight, py::arg("cause"), py::arg("effect"));
  m.def("fcm_build", &build_fcm, py::arg("concept_names"), py::arg("weights"),
        py::arg("lambda_") = 1.0, py::arg("allow_self_loops") = false,
        py::arg("eps") = 1e-6, py::arg("max_iters") = 100);
  m.def("load_fcm", &fcm_file_load, py::arg("path"));
  m.def("fcm_step", &fcm_step, py::arg("fcm"), py::arg("state"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("states", &Trajectory::states)
      .def_property_readonly("verdict",
                             [](const Trajectory& t) { return to_string(t.verdict); })
      .def_readonly("period", &Trajectory::period)
      .def("to_json", &trajectory_json);
  m.def("fcm_run", &fcm_run, py::arg("fcm"), py::arg("initial"));

  py::class_<ScenarioReport>(m, "ScenarioReport")
      .def_readonly("fire_count", &ScenarioReport::fire_count)
      .def_readonly("activation_e5", &ScenarioReport::activation_e5)
      .def_readonly("baseline_fixed_point", &ScenarioReport::baseline_fixed_point)
      .def_readonly("scenario_fixed_point", &ScenarioReport::scenario_fixed_point)
      .def_readonly("deltas", &ScenarioReport::deltas)
      .def_readonly("converged", &ScenarioReport::converged)
      .def("render", [](const ScenarioReport& r) {
        const RenderedReport rendered = render_report(r);
        return py::make_tuple(rendered.json, rendered.table);
      });
  m.def("run_fire_scenario", &run_fire_scenario, py::arg("fcm"), py::arg("baseline"),
        py::arg("e5_activation"), py::arg("e5_index"));
}
