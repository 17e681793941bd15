#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace meso {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames into place, so readers never see
// a torn file. All toolkit outputs go through this.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::vector<std::string> read_lines(const std::filesystem::path& path);

// Runs fn(i) for i in [0, n) on up to `parallelism` threads. The first
// exception thrown by any task is rethrown after all workers join.
void parallel_for_indexed(std::size_t n, unsigned parallelism,
                          const std::function<void(std::size_t)>& fn);

} // namespace meso
