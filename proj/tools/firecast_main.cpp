#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "firecast/dataset.hpp"
#include "firecast/errors.hpp"
#include "firecast/fcm.hpp"
#include "firecast/image.hpp"
#include "firecast/localizer.hpp"
#include "firecast/model.hpp"
#include "firecast/pipeline.hpp"
#include "firecast/serialize.hpp"
#include "firecast/train.hpp"

namespace fs = std::filesystem;
using namespace firecast;

namespace {

TimeWindow parse_window(const std::string& text) {
  const std::size_t colon = text.find(':');
  TimeWindow window;
  if (colon != std::string::npos) {
    const char* begin = text.data();
    const auto first = std::from_chars(begin, begin + colon, window.start);
    const auto second =
        std::from_chars(begin + colon + 1, begin + text.size(), window.end);
    if (first.ec == std::errc{} && first.ptr == begin + colon &&
        second.ec == std::errc{} && second.ptr == begin + text.size()) {
      return window;
    }
  }
  throw CLI::ValidationError("--window", "expected START:END epoch seconds");
}

// Leading digits of the file name, if any, act as the capture timestamp.
std::int64_t timestamp_for(const fs::path& file, std::int64_t fallback) {
  const std::string stem = file.stem().string();
  std::int64_t value = 0;
  const auto result = std::from_chars(stem.data(), stem.data() + stem.size(), value);
  if (result.ec == std::errc{} && result.ptr != stem.data()) {
    return value;
  }
  return fallback;
}

InputSpec spec_from_dataset(const Dataset& data) {
  const Shape& shape = data.front().image.shape;
  return {shape[1], shape[2], shape[0]};
}

struct SynthArgs {
  std::string out;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t size = 32;
};

struct TrainArgs {
  std::string data;
  std::string model;
  TrainConfig cfg;
};

struct EvalArgs {
  std::string data;
  std::string model;
};

struct ClassifyArgs {
  std::string model;
  std::string image;
  double quantile = 0.99;
};

struct FcmRunArgs {
  std::string map;
  std::string init;
};

struct PipelineArgs {
  std::string model;
  std::string images;
  std::string map;
  std::string window;
  std::string baseline;
  std::size_t cap = 10;
  std::size_t e5_index = 4;
  double quantile = 0.99;
};

void run_synth(const SynthArgs& args) {
  const SynthManifest manifest =
      synth_generate(args.out, args.count, args.seed, args.size);
  std::cout << "{\"out\":\"" << manifest.root.string() << "\",\"fire\":"
            << manifest.fire_files.size() << ",\"nofire\":"
            << manifest.nofire_files.size() << "}\n";
}

void run_train(const TrainArgs& args) {
  const Dataset data = dataset_load(args.data);
  Model model = make_reference_model(spec_from_dataset(data), args.cfg.seed);
  train(model, data, args.cfg, [](std::size_t epoch, const Metrics& metrics) {
    std::cout << epoch_metrics_json(epoch, metrics) << "\n";
  });
  model_save(model, args.model);
}

void run_eval(const EvalArgs& args) {
  const Model model = model_load(args.model);
  const Dataset data = dataset_load(args.data);
  std::cout << metrics_json(evaluate(model, data)) << "\n";
}

void run_classify(const ClassifyArgs& args) {
  const Model model = model_load(args.model);
  const GrayImage image = pgm_load(args.image);
  std::cout << detection_json(detect_fire(model, image, args.quantile)) << "\n";
}

void run_fcm_run(const FcmRunArgs& args) {
  const Fcm fcm = fcm_file_load(args.map);
  const ActivationVector initial = activation_load(args.init, fcm.size());
  std::cout << trajectory_json(fcm_run(fcm, initial)) << "\n";
}

void run_pipeline(const PipelineArgs& args) {
  const TimeWindow window = parse_window(args.window);
  const Model model = model_load(args.model);
  const Fcm fcm = fcm_file_load(args.map);

  if (!fs::is_directory(args.images)) {
    throw InputError("image directory " + args.images + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.images)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<TimedDetection> entries;
  for (const fs::path& file : files) {
    const GrayImage image = pgm_load(file);
    entries.push_back({timestamp_for(file, window.start),
                       detect_fire(model, image, args.quantile)});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const TimedDetection& a, const TimedDetection& b) {
                     return a.timestamp < b.timestamp;
                   });
  const DetectionLog log = make_detection_log(std::move(entries));

  const double activation = frequency_activation(log, window, args.cap);

  ActivationVector baseline(fcm.size(), 0.5);
  if (!args.baseline.empty()) {
    baseline = activation_load(args.baseline, fcm.size());
  }

  ScenarioReport report = run_fire_scenario(fcm, baseline, activation, args.e5_index);
  report.window = window;
  report.fire_count = count_fires_in_window(log, window);

  const RenderedReport rendered = render_report(report);
  std::cout << rendered.json << "\n";
  std::cerr << rendered.table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wildfire detection, localization and cognitive-map forecasting"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled dataset");
  synth->add_option("--out", synth_args.out, "Output directory")->required();
  synth->add_option("--count", synth_args.count, "Total image count (even)")->required();
  synth->add_option("--seed", synth_args.seed, "Generator seed")->required();
  synth->add_option("--size", synth_args.size, "Image side length")->capture_default_str();
  synth->callback([&] { run_synth(synth_args); });

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train the classifier on a dataset");
  train_cmd->add_option("--data", train_args.data, "Dataset root (fire/, nofire/)")->required();
  train_cmd->add_option("--model", train_args.model, "Output model path")->required();
  train_cmd->add_option("--epochs", train_args.cfg.epochs, "Training epochs")->capture_default_str();
  train_cmd->add_option("--lr", train_args.cfg.learning_rate, "Learning rate")->capture_default_str();
  train_cmd->add_option("--batch", train_args.cfg.batch_size, "Mini-batch size")->capture_default_str();
  train_cmd->add_option("--seed", train_args.cfg.seed, "Shuffle/init seed")->required();
  train_cmd->callback([&] { run_train(train_args); });

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a dataset");
  eval_cmd->add_option("--data", eval_args.data, "Dataset root")->required();
  eval_cmd->add_option("--model", eval_args.model, "Model path")->required();
  eval_cmd->callback([&] { run_eval(eval_args); });

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Classify one image and localize fire");
  classify->add_option("--model", classify_args.model, "Model path")->required();
  classify->add_option("--image", classify_args.image, "PGM image path")->required();
  classify->add_option("--quantile", classify_args.quantile, "Brightness quantile")->capture_default_str();
  classify->callback([&] { run_classify(classify_args); });

  auto* fcm_cmd = app.add_subcommand("fcm", "Fuzzy cognitive map operations");
  fcm_cmd->require_subcommand(1);
  FcmRunArgs fcm_args;
  auto* fcm_run_cmd = fcm_cmd->add_subcommand("run", "Iterate a map to convergence");
  fcm_run_cmd->add_option("--map", fcm_args.map, "Map JSON path")->required();
  fcm_run_cmd->add_option("--init", fcm_args.init, "Initial activation JSON path")->required();
  fcm_run_cmd->callback([&] { run_fcm_run(fcm_args); });

  PipelineArgs pipeline_args;
  auto* pipeline = app.add_subcommand(
      "pipeline", "Classify a directory and run the fire scenario forecast");
  pipeline->add_option("--model", pipeline_args.model, "Model path")->required();
  pipeline->add_option("--images", pipeline_args.images, "Directory of PGM images")->required();
  pipeline->add_option("--map", pipeline_args.map, "Map JSON path")->required();
  pipeline->add_option("--window", pipeline_args.window, "START:END epoch seconds")->required();
  pipeline->add_option("--cap", pipeline_args.cap, "Fire count that saturates e5")->capture_default_str();
  pipeline->add_option("--e5-index", pipeline_args.e5_index,
                       "Index of the fire-frequency concept")->capture_default_str();
  pipeline->add_option("--baseline", pipeline_args.baseline,
                       "Baseline activation JSON (default: all 0.5)");
  pipeline->add_option("--quantile", pipeline_args.quantile, "Brightness quantile")->capture_default_str();
  pipeline->callback([&] { run_pipeline(pipeline_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
