#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "avsa/corpus.hpp"
#include "avsa/geometry.hpp"
#include "avsa/scene.hpp"
#include "avsa/toy_trainer.hpp"
#include "avsa/version.hpp"

namespace avsa {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    f >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << j.dump(2) << '\n';
}

// ---- channel remap table: a JSON array of source channel indices ----

inline std::vector<int> parse_remap(const json& j) {
  if (!j.is_array()) throw std::runtime_error("remap table must be a JSON array");
  std::vector<int> remap;
  for (const auto& v : j) remap.push_back(v.get<int>());
  return remap;
}

// ---- detections: the contract an external detector must emit ----

struct DetectionFile {
  int frame_width = 0;
  int frame_height = 0;
  std::vector<Detection> objects;
};

inline DetectionFile parse_detections(const json& j) {
  DetectionFile out;
  out.frame_width = j.at("frame").at("width").get<int>();
  out.frame_height = j.at("frame").at("height").get<int>();
  if (out.frame_width <= 0 || out.frame_height <= 0)
    throw std::runtime_error("detections: invalid frame size");
  for (const auto& o : j.at("objects")) {
    Detection d;
    const auto& bbox = o.at("bbox");
    d.bbox_x = bbox.at(0).get<double>();
    d.bbox_y = bbox.at(1).get<double>();
    d.bbox_w = bbox.at(2).get<double>();
    d.bbox_h = bbox.at(3).get<double>();
    const auto& center = o.at("center");
    d.center_x = center.at(0).get<double>();
    d.center_y = center.at(1).get<double>();
    d.label = o.value("label", std::string{});
    d.confidence = o.value("confidence", 1.0);
    d.validate(out.frame_width, out.frame_height);
    out.objects.push_back(std::move(d));
  }
  return out;
}

// ---- scene specification for synth-scene ----
//
// Source signals are either generated ("noise" with a per-source stream of
// the scene seed, or "sine" with frequency/amplitude/phase) or read from a
// mono WAV file.

inline SceneSpec parse_scene_spec(const json& j) {
  SceneSpec spec;
  spec.sample_rate = j.value("sample_rate", 24000);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.diffuse_gain = j.value("diffuse_gain", 0.0);
  spec.diffuse_component_count = j.value("diffuse_components", 64);
  if (j.contains("num_samples"))
    spec.num_samples = j.at("num_samples").get<std::size_t>();
  else if (j.contains("duration_s"))
    spec.num_samples =
        static_cast<std::size_t>(j.at("duration_s").get<double>() * spec.sample_rate + 0.5);

  std::uint64_t source_stream = 0x5EED;
  for (const auto& s : j.value("sources", json::array())) {
    const Direction dir = Direction::from_degrees(s.at("azimuth_deg").get<double>(),
                                                  s.at("elevation_deg").get<double>());
    std::vector<double> signal;
    const std::string type = s.at("signal").at("type").get<std::string>();
    std::size_t n = spec.num_samples;
    if (s.at("signal").contains("num_samples"))
      n = s.at("signal").at("num_samples").get<std::size_t>();
    if (type == "noise") {
      if (n == 0) throw std::runtime_error("scene: noise source needs a length");
      const double amp = s.at("signal").value("amplitude", 1.0);
      SeededRng rng(mix_seed(spec.seed, source_stream++));
      signal.resize(n);
      for (auto& v : signal) v = amp * rng.gaussian();
    } else if (type == "sine") {
      if (n == 0) throw std::runtime_error("scene: sine source needs a length");
      const double freq = s.at("signal").at("frequency_hz").get<double>();
      const double amp = s.at("signal").value("amplitude", 1.0);
      const double phase = s.at("signal").value("phase_rad", 0.0);
      signal.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        signal[i] = amp * std::sin(2.0 * kPi * freq * static_cast<double>(i) / spec.sample_rate + phase);
    } else if (type == "file") {
      const WavData wav = read_wav(s.at("signal").at("path").get<std::string>());
      if (wav.channels.size() != 1)
        throw std::runtime_error("scene: source files must be mono");
      if (wav.sample_rate != spec.sample_rate)
        throw std::runtime_error("scene: source file sample rate mismatch");
      signal = wav.channels[0];
    } else {
      throw std::runtime_error("scene: unknown signal type '" + type + "'");
    }
    spec.sources.emplace_back(dir, std::move(signal));
  }
  return spec;
}

// ---- reports ----

inline json validity_result_json(const ValidityResult& r) {
  json j;
  j["energy_ratio"] = std::isinf(r.energy_ratio) ? json("inf") : json(r.energy_ratio);
  j["passed"] = r.passed;
  j["e_w"] = r.e_w;
  j["e_xyz"] = r.e_xyz;
  return j;
}

inline json validate_report_json(const std::string& path, const ValidityResult& r,
                                 const ValidityConfig& cfg) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["file"] = path;
  j["config"] = {{"tau", cfg.tau}, {"cutoff_hz", cfg.cutoff_hz}};
  j.update(validity_result_json(r));
  return j;
}

inline json corpus_report_json(const CorpusReport& report) {
  json files = json::array();
  for (const auto& fv : report.files) {
    json f;
    f["path"] = fv.path;
    if (fv.readable) {
      f.update(validity_result_json(fv.result));
    } else {
      f["error"] = fv.error;
    }
    files.push_back(std::move(f));
  }
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = {{"tau", report.config.tau}, {"cutoff_hz", report.config.cutoff_hz}};
  j["files"] = std::move(files);
  j["total"] = report.total;
  j["passes"] = report.passes;
  j["errors"] = report.errors;
  j["pass_fraction"] = report.pass_fraction;
  return j;
}

inline std::string pass_list_text(const CorpusReport& report) {
  std::string out;
  for (const auto& fv : report.files)
    if (fv.readable && fv.result.passed) {
      out += fv.path;
      out += '\n';
    }
  return out;
}

inline json crop_sidecar_json(const Crop& crop, std::uint64_t seed, const std::string& mode,
                              int quadrant = -1) {
  json j;
  j["center"] = {{"azimuth_deg", crop.center.azimuth_deg()},
                 {"elevation_deg", crop.center.elevation_deg()}};
  j["fov_deg"] = crop.fov_deg;
  j["out_size"] = crop.out_size;
  j["provenance"] =
      crop.provenance == CropProvenance::detected ? "detected" : "random-fallback";
  if (crop.detection_index >= 0) j["detection_index"] = crop.detection_index;
  if (quadrant >= 0) j["quadrant"] = quadrant;
  j["mode"] = mode;
  j["seed"] = seed;
  return j;
}

inline json align_demo_report_json(const ToyDatasetConfig& data_cfg, const ToyTrainConfig& cfg,
                                   const ToyTrainResult& res) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["mode"] = to_string(cfg.mode);
  j["config"] = {{"clips", data_cfg.n_clips},
                 {"crops_per_clip", data_cfg.crops_per_clip},
                 {"latent_dim", data_cfg.latent_dim},
                 {"audio_dim", data_cfg.audio_dim},
                 {"video_dim", data_cfg.video_dim},
                 {"noise_sigma", data_cfg.noise_sigma},
                 {"shuffle_pairs", data_cfg.shuffle_pairs},
                 {"epochs", cfg.epochs},
                 {"learning_rate", cfg.learning_rate},
                 {"temperature", cfg.temperature},
                 {"embed_dim", cfg.embed_dim}};
  j["seed"] = cfg.seed;
  j["loss_curve"] = res.loss_curve;
  j["train_accuracy"] = res.train_accuracy;
  j["eval_accuracy"] = res.eval_accuracy;
  if (res.diverged_epoch >= 0) j["diverged_epoch"] = res.diverged_epoch;
  return j;
}

}  // namespace avsa
