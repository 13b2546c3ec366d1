#pragma once

#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "avsa/validity.hpp"
#include "avsa/wav_io.hpp"

namespace avsa {

struct ScanOptions {
  int jobs = 1;
  // When true, unreadable files are dropped from the pass_fraction
  // denominator; otherwise they count as non-passing.
  bool skip_errors = false;
  std::vector<int> remap;  // empty = no remap
};

// Runs the validity test over a list of files. Results keep the input
// order no matter how many worker threads run.
inline CorpusReport scan_corpus(const std::vector<std::string>& paths,
                                const ValidityConfig& cfg = {},
                                const ScanOptions& opts = {}) {
  if (paths.empty()) throw std::invalid_argument("scan_corpus: no files to scan");

  CorpusReport report;
  report.config = cfg;
  report.files.resize(paths.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= paths.size()) return;
      FileValidity& fv = report.files[i];
      fv.path = paths[i];
      try {
        const WavData wav = read_wav(paths[i]);
        const FoaSignal x = foa_from_wav(wav, opts.remap.empty() ? nullptr : &opts.remap);
        fv.result = validity_test(x, cfg);
        fv.readable = true;
      } catch (const std::exception& e) {
        fv.readable = false;
        fv.error = e.what();
      }
    }
  };

  const int jobs = opts.jobs < 1 ? 1 : opts.jobs;
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& fv : report.files) {
    if (!fv.readable) {
      ++report.errors;
      if (!opts.skip_errors) ++report.total;
      continue;
    }
    ++report.total;
    if (fv.result.passed) ++report.passes;
  }
  if (report.total == 0) throw std::runtime_error("scan_corpus: no readable files found");
  report.pass_fraction = static_cast<double>(report.passes) / static_cast<double>(report.total);
  return report;
}

}  // namespace avsa
