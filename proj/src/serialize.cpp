#include "firecast/serialize.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "firecast/errors.hpp"

namespace firecast {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

const ordered_json& require_key(const ordered_json& obj, const char* key,
                                const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(std::string(where) + " is missing required key \"" + key +
                          "\"");
  }
  return *it;
}

std::vector<double> number_array(const ordered_json& value, const char* where) {
  if (!value.is_array()) {
    throw ValidationError(std::string(where) + " must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_number()) {
      throw ValidationError(std::string(where) + " must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Tensor tensor_field(const ordered_json& obj, const char* key, Shape shape,
                    const char* where) {
  std::vector<double> values = number_array(require_key(obj, key, where), where);
  const std::size_t expected = shape_numel(shape);
  if (values.size() != expected) {
    throw ValidationError(std::string(where) + "." + key + " has " +
                          std::to_string(values.size()) + " values, expected " +
                          std::to_string(expected) + " for shape " + shape_str(shape));
  }
  Tensor t(std::move(shape), std::move(values));
  for (double v : t.data) {
    if (!std::isfinite(v)) {
      throw ValidationError(std::string(where) + "." + key + " contains a non-finite value");
    }
  }
  return t;
}

}  // namespace

void model_save(const Model& model, const std::filesystem::path& path) {
  ordered_json doc;
  doc["version"] = 1;
  doc["input_spec"] = {model.input_spec.height, model.input_spec.width,
                       model.input_spec.channels};
  ordered_json layers = ordered_json::array();

  ordered_json conv;
  conv["type"] = "conv2d";
  conv["filters"] = model.conv.filter_count;
  conv["kernel"] = model.conv.kernel_size;
  conv["weights"] = model.conv.weights.data;
  conv["bias"] = model.conv.bias.data;
  layers.push_back(std::move(conv));

  layers.push_back({{"type", "maxpool"}, {"window", model.pool.window}});
  layers.push_back({{"type", "flatten"}});

  for (const DenseLayer* dense : {&model.fc1, &model.fc2}) {
    ordered_json d;
    d["type"] = "dense";
    d["units"] = dense->out_units;
    d["activation"] = to_string(dense->activation);
    d["weights"] = dense->weights.data;
    d["bias"] = dense->bias.data;
    layers.push_back(std::move(d));
  }
  doc["layers"] = std::move(layers);
  write_text_file(path, doc.dump());
}

Model model_load(const std::filesystem::path& path) {
  const ordered_json doc = parse_json_file(path);
  try {
    const auto& version = require_key(doc, "version", "model file");
    if (!version.is_number_integer() || version.get<int>() != 1) {
      throw ValidationError("unsupported model file version " + version.dump() +
                            ", expected 1");
    }
    const std::vector<double> spec = number_array(
        require_key(doc, "input_spec", "model file"), "model file input_spec");
    if (spec.size() != 3) {
      throw ValidationError("input_spec must be [height, width, channels]");
    }
    InputSpec input{static_cast<std::size_t>(spec[0]), static_cast<std::size_t>(spec[1]),
                    static_cast<std::size_t>(spec[2])};

    const auto& layers = require_key(doc, "layers", "model file");
    static constexpr const char* kExpected[] = {"conv2d", "maxpool", "flatten",
                                                "dense", "dense"};
    if (!layers.is_array() || layers.size() != 5) {
      throw ValidationError("model file must describe exactly 5 layers "
                            "(conv2d, maxpool, flatten, dense, dense)");
    }
    for (std::size_t i = 0; i < 5; ++i) {
      const std::string type = require_key(layers[i], "type", "layer").get<std::string>();
      if (type != kExpected[i]) {
        throw ValidationError("layer " + std::to_string(i) + " has type \"" + type +
                              "\", expected \"" + kExpected[i] + "\"");
      }
    }

    Model model;
    model.input_spec = input;

    const auto& conv = layers[0];
    model.conv.filter_count = require_key(conv, "filters", "conv2d layer").get<std::size_t>();
    model.conv.kernel_size = require_key(conv, "kernel", "conv2d layer").get<std::size_t>();
    model.conv.in_channels = input.channels;
    if (model.conv.kernel_size > input.height || model.conv.kernel_size > input.width) {
      throw ValidationError("conv2d kernel exceeds the declared input extent");
    }
    model.conv.weights = tensor_field(
        conv, "weights",
        {model.conv.filter_count, model.conv.in_channels, model.conv.kernel_size,
         model.conv.kernel_size},
        "conv2d layer");
    model.conv.bias = tensor_field(conv, "bias", {model.conv.filter_count}, "conv2d layer");

    const std::size_t window =
        require_key(layers[1], "window", "maxpool layer").get<std::size_t>();
    if (window == 0) throw ValidationError("maxpool window must be positive");
    model.pool = PoolSpec{window, window};

    const std::size_t conv_h = input.height - model.conv.kernel_size + 1;
    const std::size_t conv_w = input.width - model.conv.kernel_size + 1;
    if (conv_h < window || conv_w < window) {
      throw ValidationError("maxpool window exceeds the conv output extent");
    }
    const std::size_t flat =
        model.conv.filter_count * ((conv_h - window) / window + 1) *
        ((conv_w - window) / window + 1);

    std::size_t in_units = flat;
    DenseLayer* dense_layers[] = {&model.fc1, &model.fc2};
    for (std::size_t d = 0; d < 2; ++d) {
      const auto& spec_layer = layers[3 + d];
      DenseLayer& dense = *dense_layers[d];
      dense.in_units = in_units;
      dense.out_units = require_key(spec_layer, "units", "dense layer").get<std::size_t>();
      if (dense.out_units == 0) throw ValidationError("dense units must be positive");
      dense.activation = activation_from_string(
          require_key(spec_layer, "activation", "dense layer").get<std::string>());
      dense.weights = tensor_field(spec_layer, "weights",
                                   {dense.out_units, dense.in_units}, "dense layer");
      dense.bias = tensor_field(spec_layer, "bias", {dense.out_units}, "dense layer");
      in_units = dense.out_units;
    }
    if (model.fc2.out_units != 1) {
      throw ValidationError("final dense layer must have exactly 1 unit, got " +
                            std::to_string(model.fc2.out_units));
    }
    if (model.fc2.activation != Activation::Sigmoid) {
      throw ValidationError("final dense layer must use the sigmoid activation");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed model file " + path.string() + ": " + e.what());
  }
}

Fcm fcm_from_json_text(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid map JSON: ") + e.what());
  }
  try {
    const auto& concepts_json = require_key(doc, "concepts", "map file");
    if (!concepts_json.is_array() || concepts_json.empty()) {
      throw ValidationError("map file needs a nonempty \"concepts\" array");
    }
    std::vector<Concept> concepts;
    for (const auto& c : concepts_json) {
      concepts.push_back({require_key(c, "id", "concept").get<std::size_t>(),
                          require_key(c, "name", "concept").get<std::string>()});
    }
    const std::size_t n = concepts.size();

    LinguisticScale scale = default_linguistic_scale();
    if (const auto it = doc.find("scale"); it != doc.end()) {
      if (!it->is_object()) throw ValidationError("\"scale\" must be an object");
      scale.clear();
      for (const auto& [term, value] : it->items()) {
        if (!value.is_number()) {
          throw ValidationError("scale term \"" + term + "\" must map to a number");
        }
        const double v = value.get<double>();
        if (!(v >= -1.0 && v <= 1.0)) {
          throw ValidationError("scale term \"" + term + "\" = " + std::to_string(v) +
                                " is outside [-1,1]");
        }
        scale.emplace_back(term, v);
      }
    }

    const bool has_weights = doc.contains("weights");
    const bool has_edges = doc.contains("edges");
    if (has_weights == has_edges) {
      throw ValidationError("map file needs exactly one of \"weights\" or \"edges\"");
    }

    CognitiveMatrix matrix(n);
    if (has_weights) {
      const auto& rows_json = doc["weights"];
      if (!rows_json.is_array() || rows_json.size() != n) {
        throw ValidationError("\"weights\" must be a " + std::to_string(n) + "x" +
                              std::to_string(n) + " matrix");
      }
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(number_array(rows_json[i], "weights row"));
      }
      matrix = CognitiveMatrix::from_rows(rows);
      if (matrix.n != n) {
        throw ValidationError("weight matrix size does not match the concept count");
      }
    } else {
      for (const auto& edge : doc["edges"]) {
        const std::size_t from = require_key(edge, "from", "edge").get<std::size_t>();
        const std::size_t to = require_key(edge, "to", "edge").get<std::size_t>();
        if (from >= n || to >= n) {
          throw ValidationError("edge endpoint out of range: from=" + std::to_string(from) +
                                " to=" + std::to_string(to));
        }
        const std::string term = require_key(edge, "term", "edge").get<std::string>();
        matrix.at(from, to) = resolve_linguistic(scale, term);
      }
    }

    FcmConfig config;
    if (const auto it = doc.find("config"); it != doc.end()) {
      if (it->contains("lambda")) config.lambda = (*it)["lambda"].get<double>();
      if (it->contains("allow_self_loops")) {
        config.allow_self_loops = (*it)["allow_self_loops"].get<bool>();
      }
      if (it->contains("eps")) config.eps = (*it)["eps"].get<double>();
      if (it->contains("max_iters")) config.max_iters = (*it)["max_iters"].get<std::size_t>();
    }

    return fcm_build(std::move(concepts), std::move(matrix), config);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed map file: ") + e.what());
  }
}

Fcm fcm_file_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  try {
    return fcm_from_json_text(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

ActivationVector activation_load(const std::filesystem::path& path,
                                 std::size_t expected_size) {
  const ordered_json doc = parse_json_file(path);
  try {
    ActivationVector values =
        number_array(require_key(doc, "values", "init file"), "init file values");
    if (values.size() != expected_size) {
      throw ValidationError(path.string() + " has " + std::to_string(values.size()) +
                            " values, map has " + std::to_string(expected_size) +
                            " concepts");
    }
    return values;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed init file " + path.string() + ": " + e.what());
  }
}

std::string detection_json(const Detection& detection) {
  ordered_json doc;
  doc["label"] = detection.label == FireLabel::Fire ? "fire" : "no_fire";
  doc["probability"] = detection.probability;
  if (detection.bbox) {
    doc["bbox"] = {{"x_min", detection.bbox->x_min},
                   {"y_min", detection.bbox->y_min},
                   {"x_max", detection.bbox->x_max},
                   {"y_max", detection.bbox->y_max}};
    doc["area_px"] = *detection.area_px;
  }
  return doc.dump();
}

std::string metrics_json(const Metrics& metrics) {
  ordered_json doc;
  doc["loss"] = metrics.loss;
  doc["accuracy"] = metrics.accuracy;
  return doc.dump();
}

std::string epoch_metrics_json(std::size_t epoch, const Metrics& metrics) {
  ordered_json doc;
  doc["epoch"] = epoch;
  doc["loss"] = metrics.loss;
  doc["accuracy"] = metrics.accuracy;
  return doc.dump();
}

std::string trajectory_json(const Trajectory& trajectory) {
  ordered_json doc;
  doc["states"] = trajectory.states;
  doc["verdict"] = to_string(trajectory.verdict);
  if (trajectory.verdict == Verdict::LimitCycle) {
    doc["period"] = trajectory.period;
  }
  return doc.dump();
}

}  // namespace firecast
