#include "mlsniff/batch.hpp"

#include <algorithm>
#include <filesystem>
#include <system_error>

namespace mlsniff {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> paths) {
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  return paths;
}

BatchResult collect(std::vector<std::variant<FileReport, FileError>>& slots) {
  BatchResult out;
  for (auto& slot : slots) {
    if (auto* r = std::get_if<FileReport>(&slot)) out.reports.push_back(std::move(*r));
    else out.errors.push_back(std::move(std::get<FileError>(slot)));
  }
  return out;
}

std::string display_path(const fs::path& p) { return p.lexically_normal().generic_string(); }

}  // namespace

BatchResult analyze_batch(const std::vector<std::string>& paths, const AnalysisConfig& config) {
  const auto files = sorted_unique(paths);
  const auto n = static_cast<std::ptrdiff_t>(files.size());
  std::vector<std::variant<FileReport, FileError>> slots(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      slots[i] = analyze_path(files[i], config);
    } catch (const std::exception& e) {
      slots[i] = FileError{files[i], e.what()};
    }
  }
  return collect(slots);
}

BatchResult analyze_batch_serial(const std::vector<std::string>& paths, const AnalysisConfig& config) {
  const auto files = sorted_unique(paths);
  std::vector<std::variant<FileReport, FileError>> slots;
  slots.reserve(files.size());
  for (const auto& f : files) {
    try {
      slots.push_back(analyze_path(f, config));
    } catch (const std::exception& e) {
      slots.push_back(FileError{f, e.what()});
    }
  }
  return collect(slots);
}

PathCollection collect_python_files(const std::vector<std::string>& inputs) {
  PathCollection out;
  for (const auto& input : inputs) {
    std::error_code ec;
    const fs::path root(input);
    const auto status = fs::symlink_status(root, ec);
    if (ec || !fs::exists(status)) {
      out.missing.push_back(input);
      continue;
    }
    if (fs::is_symlink(status)) {
      out.skipped.push_back(display_path(root) + ": symlink not followed");
      continue;
    }
    if (fs::is_regular_file(status)) {
      if (root.extension() == ".py") out.files.push_back(display_path(root));
      else out.skipped.push_back(display_path(root) + ": not a .py file");
      continue;
    }
    if (!fs::is_directory(status)) {
      out.skipped.push_back(display_path(root) + ": not a regular file");
      continue;
    }
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) {
      out.skipped.push_back(display_path(root) + ": " + ec.message());
      continue;
    }
    for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
      if (ec) break;
      const auto st = it->symlink_status(ec);
      if (ec) continue;
      if (fs::is_symlink(st)) {
        if (it->path().extension() == ".py") out.skipped.push_back(display_path(it->path()) + ": symlink not followed");
        continue;
      }
      if (fs::is_regular_file(st) && it->path().extension() == ".py") out.files.push_back(display_path(it->path()));
    }
  }
  out.files = sorted_unique(std::move(out.files));
  std::sort(out.skipped.begin(), out.skipped.end());
  return out;
}

}  // namespace mlsniff
