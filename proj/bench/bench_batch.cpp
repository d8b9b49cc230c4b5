#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "../tests/common/chain_oracle.hpp"
#include "mlsniff/batch.hpp"

namespace fs = std::filesystem;

namespace {

// A scratch corpus of generated files, created once per process.
const std::vector<std::string>& corpus() {
  static const std::vector<std::string> files = [] {
    const fs::path dir = fs::temp_directory_path() / "mlsniff-bench-corpus";
    fs::create_directories(dir);
    std::vector<std::string> out;
    for (unsigned i = 0; i < 64; ++i) {
      const fs::path p = dir / ("f" + std::to_string(i) + ".py");
      std::ofstream(p) << mlsniff::oracle::generate_chain_file(i, 400).text
                       << "import numpy as np\nfor k in range(9):\n    a = np.append(a, k)\n";
      out.push_back(p.string());
    }
    return out;
  }();
  return files;
}

void BM_Serial(benchmark::State& state) {
  const mlsniff::AnalysisConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(mlsniff::analyze_batch_serial(corpus(), config));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}

void BM_OpenMP(benchmark::State& state) {
  const mlsniff::AnalysisConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(mlsniff::analyze_batch(corpus(), config));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}

void BM_ParseOnly(benchmark::State& state) {
  const auto text = mlsniff::oracle::generate_chain_file(1, 2000).text;
  for (auto _ : state) benchmark::DoNotOptimize(mlsniff::parse_source(mlsniff::SourceFile("b.py", text)));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}

}  // namespace

BENCHMARK(BM_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParseOnly)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
