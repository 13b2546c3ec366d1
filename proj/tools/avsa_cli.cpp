// avsa: command-line toolkit for first-order Ambisonics scene synthesis,
// rotation, beamforming, spatial feature extraction, dataset validity
// scanning, 360-degree crop selection, and the toy alignment demo.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avsa/avsa.hpp"

namespace fs = std::filesystem;

namespace {

avsa::WavSampleFormat parse_bits(int bits) {
  switch (bits) {
    case 16: return avsa::WavSampleFormat::pcm16;
    case 32: return avsa::WavSampleFormat::float32;
    case 64: return avsa::WavSampleFormat::float64;
    default: throw CLI::ValidationError("--bits must be 16, 32 or 64");
  }
}

std::vector<int> load_remap(const std::string& path) {
  if (path.empty()) return {};
  return avsa::parse_remap(avsa::load_json_file(path));
}

avsa::FoaSignal load_foa(const std::string& path, const std::string& remap_path) {
  const auto remap = load_remap(remap_path);
  const avsa::WavData wav = avsa::read_wav(path);
  return avsa::foa_from_wav(wav, remap.empty() ? nullptr : &remap);
}

struct StftFlags {
  int window = 504;
  int hop = 240;
  int fft = 512;
  int mels = 128;

  avsa::StftConfig config() const { return {window, hop, fft}; }

  void attach(CLI::App* cmd) {
    cmd->add_option("--window", window, "STFT window length in samples");
    cmd->add_option("--hop", hop, "STFT hop length in samples");
    cmd->add_option("--fft", fft, "FFT size in samples");
    cmd->add_option("--mels", mels, "number of mel bands");
  }
};

int run(int argc, char** argv) {
  CLI::App app{"avsa: spatial audio-visual alignment toolkit"};
  app.require_subcommand(1);

  bool show_version = false;
  app.add_flag("--version", show_version, "print library and format versions");

  // ---- synth-scene ----
  auto* synth = app.add_subcommand("synth-scene", "synthesize a FOA scene from a JSON spec");
  std::string synth_spec, synth_out = "scene.wav";
  std::uint64_t synth_seed = 0;
  bool synth_seed_set = false;
  int synth_bits = 32;
  synth->add_option("spec", synth_spec, "scene spec JSON file")->required();
  synth->add_option("-o,--output", synth_out, "output WAV path");
  synth->add_option("--seed", synth_seed, "override the spec's RNG seed")
      ->each([&](const std::string&) { synth_seed_set = true; });
  synth->add_option("--bits", synth_bits, "sample format: 16 (PCM), 32 or 64 (float)");

  // ---- rotate ----
  auto* rot = app.add_subcommand("rotate", "rotate a FOA recording (yaw-pitch-roll)");
  std::string rot_in, rot_out = "rotated.wav", rot_remap;
  double rot_yaw = 0.0, rot_pitch = 0.0, rot_roll = 0.0;
  int rot_bits = 32;
  rot->add_option("input", rot_in, "4-channel WYZX WAV")->required();
  rot->add_option("-o,--output", rot_out, "output WAV path");
  rot->add_option("--yaw", rot_yaw, "yaw in degrees");
  rot->add_option("--pitch", rot_pitch, "pitch in degrees");
  rot->add_option("--roll", rot_roll, "roll in degrees");
  rot->add_option("--remap", rot_remap, "channel remap JSON (array of source indices)");
  rot->add_option("--bits", rot_bits, "sample format: 16, 32 or 64");

  // ---- beamform ----
  auto* beam = app.add_subcommand("beamform", "beamform a FOA recording to mono");
  std::string beam_in, beam_out = "beam.wav", beam_remap;
  double beam_az = 0.0, beam_el = 0.0;
  int beam_bits = 32;
  beam->add_option("input", beam_in, "4-channel WYZX WAV")->required();
  beam->add_option("-o,--output", beam_out, "output WAV path");
  beam->add_option("--azimuth", beam_az, "beam azimuth in degrees (left positive)");
  beam->add_option("--elevation", beam_el, "beam elevation in degrees (up positive)");
  beam->add_option("--remap", beam_remap, "channel remap JSON");
  beam->add_option("--bits", beam_bits, "sample format: 16, 32 or 64");

  // ---- stereo ----
  auto* st = app.add_subcommand("stereo", "extract stereo around a crop direction");
  std::string st_in, st_out = "stereo.wav", st_remap;
  double st_az = 0.0, st_el = 0.0;
  int st_bits = 32;
  st->add_option("input", st_in, "4-channel WYZX WAV")->required();
  st->add_option("-o,--output", st_out, "output WAV path");
  st->add_option("--azimuth", st_az, "crop-center azimuth in degrees");
  st->add_option("--elevation", st_el, "crop-center elevation in degrees");
  st->add_option("--remap", st_remap, "channel remap JSON");
  st->add_option("--bits", st_bits, "sample format: 16, 32 or 64");

  // ---- features ----
  auto* feat = app.add_subcommand("features", "extract an AVSF feature tensor");
  std::string feat_in, feat_out = "features.avsf", feat_remap, feat_format = "foa";
  double feat_az = 0.0, feat_el = 0.0;
  StftFlags feat_stft;
  feat->add_option("input", feat_in, "input WAV")->required();
  feat->add_option("-o,--output", feat_out, "output AVSF path");
  feat->add_option("--format", feat_format, "foa | stereo | mono")
      ->check(CLI::IsMember({"foa", "stereo", "mono"}));
  feat->add_option("--azimuth", feat_az, "crop/beam azimuth in degrees (4-channel input)");
  feat->add_option("--elevation", feat_el, "crop/beam elevation in degrees");
  feat->add_option("--remap", feat_remap, "channel remap JSON");
  feat_stft.attach(feat);

  // ---- validate ----
  auto* val = app.add_subcommand("validate", "ambisonic validity test for one file");
  std::string val_in, val_remap;
  double val_tau = 0.1, val_cutoff = 4000.0;
  val->add_option("input", val_in, "4-channel WYZX WAV")->required();
  val->add_option("--tau", val_tau, "energy-ratio threshold");
  val->add_option("--cutoff", val_cutoff, "low-pass cutoff in Hz");
  val->add_option("--remap", val_remap, "channel remap JSON");

  // ---- scan ----
  auto* scan = app.add_subcommand("scan", "scan a directory of WAV files");
  std::string scan_dir, scan_out = "scan_report.json", scan_remap, scan_pass_list;
  double scan_tau = 0.1, scan_cutoff = 4000.0;
  int scan_jobs = 1;
  bool scan_skip_errors = false;
  scan->add_option("dir", scan_dir, "directory with WAV files")->required();
  scan->add_option("-o,--output", scan_out, "report JSON path");
  scan->add_option("--tau", scan_tau, "energy-ratio threshold");
  scan->add_option("--cutoff", scan_cutoff, "low-pass cutoff in Hz");
  scan->add_option("--jobs", scan_jobs, "worker threads");
  scan->add_option("--remap", scan_remap, "channel remap JSON");
  scan->add_option("--pass-list", scan_pass_list, "write passing paths, one per line");
  scan->add_flag("--skip-errors", scan_skip_errors,
                 "drop unreadable files from the pass_fraction denominator");

  // ---- crops ----
  auto* crops = app.add_subcommand("crops", "select and render gnomonic crops");
  std::string crops_frame, crops_det, crops_outdir = ".", crops_mode = "avc";
  std::uint64_t crops_seed = 0;
  double crops_fov = 90.0;
  int crops_size = 112;
  bool crops_fov_bbox = false;
  crops->add_option("frame", crops_frame, "equirectangular PNG (2:1)")->required();
  crops->add_option("detections", crops_det, "detections JSON")->required();
  crops->add_option("--mode", crops_mode, "avc | avsa")->check(CLI::IsMember({"avc", "avsa"}));
  crops->add_option("--seed", crops_seed, "RNG seed");
  crops->add_option("-o,--outdir", crops_outdir, "output directory");
  crops->add_option("--fov", crops_fov, "field of view in degrees");
  crops->add_option("--size", crops_size, "output crop size in pixels");
  crops->add_flag("--fov-from-bbox", crops_fov_bbox, "derive fov from the bbox extent");

  // ---- align-demo ----
  auto* demo = app.add_subcommand("align-demo", "train the toy alignment model");
  std::string demo_out = "align_report.json", demo_mode = "avsa";
  avsa::ToyDatasetConfig demo_data;
  avsa::ToyTrainConfig demo_cfg;
  std::uint64_t demo_seed = 0;
  bool demo_shuffle = false;
  demo->add_option("-o,--output", demo_out, "report JSON path");
  demo->add_option("--mode", demo_mode, "avc | avsa")->check(CLI::IsMember({"avc", "avsa"}));
  demo->add_option("--clips", demo_data.n_clips, "training clips");
  demo->add_option("--crops", demo_data.crops_per_clip, "crops per clip (1 for avc)");
  demo->add_option("--latent", demo_data.latent_dim, "latent dimension");
  demo->add_option("--noise", demo_data.noise_sigma, "feature noise sigma");
  demo->add_option("--epochs", demo_cfg.epochs, "training epochs");
  demo->add_option("--lr", demo_cfg.learning_rate, "learning rate");
  demo->add_option("--temperature", demo_cfg.temperature, "softmax temperature");
  demo->add_option("--seed", demo_seed, "RNG seed");
  demo->add_flag("--shuffle-pairs", demo_shuffle, "mismatch the pairs (control run)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (show_version) {
    std::cout << "avsa " << avsa::kVersionString << " (AVSF format v" << avsa::kAvsfFormatVersion
              << ", report schema v" << avsa::kReportSchemaVersion << ")\n";
    return 0;
  }

  if (synth->parsed()) {
    avsa::SceneSpec spec = avsa::parse_scene_spec(avsa::load_json_file(synth_spec));
    if (synth_seed_set) spec.seed = synth_seed;
    const avsa::FoaSignal x = avsa::synthesize_scene(spec);
    avsa::write_wav(synth_out, x, parse_bits(synth_bits));
    std::cout << "wrote " << synth_out << " (" << x.size() << " samples @ " << x.sample_rate
              << " Hz)\n";
  } else if (rot->parsed()) {
    const avsa::FoaSignal x = load_foa(rot_in, rot_remap);
    const avsa::FoaRotation q =
        avsa::rotation_matrix(avsa::RotationAngles::from_degrees(rot_yaw, rot_pitch, rot_roll));
    avsa::write_wav(rot_out, avsa::rotate(x, q), parse_bits(rot_bits));
    std::cout << "wrote " << rot_out << "\n";
  } else if (beam->parsed()) {
    const avsa::FoaSignal x = load_foa(beam_in, beam_remap);
    const auto mono = avsa::beamform(x, avsa::Direction::from_degrees(beam_az, beam_el));
    avsa::write_wav(beam_out, {mono}, x.sample_rate, parse_bits(beam_bits));
    std::cout << "wrote " << beam_out << "\n";
  } else if (st->parsed()) {
    const avsa::FoaSignal x = load_foa(st_in, st_remap);
    const avsa::StereoSignal y =
        avsa::extract_stereo(x, avsa::Direction::from_degrees(st_az, st_el));
    avsa::write_wav(st_out, y, parse_bits(st_bits));
    std::cout << "wrote " << st_out << "\n";
  } else if (feat->parsed()) {
    const avsa::StftConfig cfg = feat_stft.config();
    const avsa::WavData wav = avsa::read_wav(feat_in);
    const avsa::MelFilterbank fb =
        avsa::make_mel_filterbank(feat_stft.mels, cfg.fft_size, wav.sample_rate);
    const avsa::Direction dir = avsa::Direction::from_degrees(feat_az, feat_el);
    avsa::FeatureTensor tensor;
    if (feat_format == "foa") {
      const auto remap = load_remap(feat_remap);
      const avsa::FoaSignal x = avsa::foa_from_wav(wav, remap.empty() ? nullptr : &remap);
      tensor = avsa::foa_features(x, cfg, fb);
    } else if (feat_format == "stereo") {
      if (wav.channels.size() == 2) {
        avsa::StereoSignal y;
        y.sample_rate = wav.sample_rate;
        y.left = wav.channels[0];
        y.right = wav.channels[1];
        tensor = avsa::stereo_features(y, cfg, fb);
      } else {
        const auto remap = load_remap(feat_remap);
        const avsa::FoaSignal x = avsa::foa_from_wav(wav, remap.empty() ? nullptr : &remap);
        tensor = avsa::stereo_features(avsa::extract_stereo(x, dir), cfg, fb);
      }
    } else {  // mono
      std::vector<double> mono;
      if (wav.channels.size() == 1) {
        mono = wav.channels[0];
      } else {
        const auto remap = load_remap(feat_remap);
        const avsa::FoaSignal x = avsa::foa_from_wav(wav, remap.empty() ? nullptr : &remap);
        mono = avsa::beamform(x, dir);
      }
      tensor = avsa::log_mel(avsa::stft(mono, cfg, wav.sample_rate), fb);
      tensor.semantics = {"log-mel:mono"};
    }
    avsa::write_avsf(feat_out, tensor);
    std::cout << "wrote " << feat_out << " (" << tensor.channels << " x " << tensor.frames
              << " x " << tensor.bands << ")\n";
  } else if (val->parsed()) {
    const avsa::FoaSignal x = load_foa(val_in, val_remap);
    avsa::ValidityConfig cfg;
    cfg.tau = val_tau;
    cfg.cutoff_hz = val_cutoff;
    const avsa::ValidityResult r = avsa::validity_test(x, cfg);
    std::cout << avsa::validate_report_json(val_in, r, cfg).dump(2) << "\n";
    return r.passed ? 0 : 1;
  } else if (scan->parsed()) {
    std::vector<std::string> paths;
    if (!fs::is_directory(scan_dir)) throw std::runtime_error(scan_dir + " is not a directory");
    for (const auto& entry : fs::directory_iterator(scan_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".wav")
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw std::runtime_error("no WAV files found in " + scan_dir);

    avsa::ValidityConfig cfg;
    cfg.tau = scan_tau;
    cfg.cutoff_hz = scan_cutoff;
    avsa::ScanOptions opts;
    opts.jobs = scan_jobs;
    opts.skip_errors = scan_skip_errors;
    opts.remap = load_remap(scan_remap);
    const avsa::CorpusReport report = avsa::scan_corpus(paths, cfg, opts);
    avsa::save_json_file(scan_out, avsa::corpus_report_json(report));
    if (!scan_pass_list.empty()) {
      std::ofstream f(scan_pass_list, std::ios::trunc);
      f << avsa::pass_list_text(report);
    }
    std::cout << "scanned " << report.files.size() << " files: " << report.passes << "/"
              << report.total << " pass (fraction " << report.pass_fraction << "), "
              << report.errors << " errors; report in " << scan_out << "\n";
  } else if (crops->parsed()) {
    const avsa::EquirectFrame frame{avsa::read_png(crops_frame)};
    const avsa::DetectionFile det = avsa::parse_detections(avsa::load_json_file(crops_det));
    if (det.frame_width != frame.width() || det.frame_height != frame.height())
      throw std::runtime_error("detections frame size does not match the PNG");
    avsa::CropSelectionConfig cfg;
    cfg.fov_deg = crops_fov;
    cfg.out_size = crops_size;
    cfg.fov_from_bbox = crops_fov_bbox;
    cfg.frame_width = frame.width();
    cfg.frame_height = frame.height();

    fs::create_directories(crops_outdir);
    std::vector<avsa::Crop> selected;
    if (crops_mode == "avc")
      selected.push_back(avsa::select_crop_avc(det.objects, cfg, crops_seed));
    else
      selected = avsa::select_crops_avsa(det.objects, cfg, crops_seed);

    for (std::size_t i = 0; i < selected.size(); ++i) {
      const std::string base =
          (fs::path(crops_outdir) / ("crop_" + std::to_string(i))).string();
      avsa::write_png(base + ".png", avsa::gnomonic_crop(frame, selected[i]));
      avsa::save_json_file(base + ".json",
                           avsa::crop_sidecar_json(selected[i], crops_seed, crops_mode,
                                                   crops_mode == "avsa" ? static_cast<int>(i) : -1));
      std::cout << "wrote " << base << ".png\n";
    }
  } else if (demo->parsed()) {
    demo_cfg.mode = demo_mode == "avc" ? avsa::AlignmentMode::avc : avsa::AlignmentMode::avsa;
    if (demo_cfg.mode == avsa::AlignmentMode::avc) demo_data.crops_per_clip = 1;
    demo_data.seed = demo_seed;
    demo_data.shuffle_pairs = demo_shuffle;
    demo_cfg.seed = demo_seed;
    const avsa::ToyDataset train = avsa::make_toy_dataset(demo_data, 1);
    avsa::ToyDatasetConfig eval_cfg = demo_data;
    eval_cfg.shuffle_pairs = false;
    const avsa::ToyDataset eval = avsa::make_toy_dataset(eval_cfg, 2);
    const avsa::ToyTrainResult res = avsa::toy_train(train, eval, demo_cfg);
    avsa::save_json_file(demo_out, avsa::align_demo_report_json(demo_data, demo_cfg, res));
    std::cout << "final loss " << (res.loss_curve.empty() ? 0.0 : res.loss_curve.back())
              << ", train accuracy " << res.train_accuracy << ", eval accuracy "
              << res.eval_accuracy << "; report in " << demo_out << "\n";
    if (res.diverged_epoch >= 0) {
      std::cerr << "training diverged at epoch " << res.diverged_epoch << "\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
