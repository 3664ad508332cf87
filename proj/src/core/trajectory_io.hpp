#pragma once

// Binary trajectory dumps and their JSON manifests.
//
// Dump layout, all little-endian IEEE doubles:
//   alpha, M (cells), J (steps), T, then U_0, U_1, ..., U_J (M-1 values each).

#include <cstdint>
#include <filesystem>
#include <string>

#include "core/dg_solver.hpp"

namespace fracwave {

/// Writes atomically (temporary file in the same directory, then rename).
/// Throws ArgumentError when the trajectory does not hold all slabs, IoError on failure.
void dump_trajectory(const Trajectory& traj, const std::filesystem::path& path);

/// Reads a dump; slab norms are recomputed.
Trajectory load_trajectory(const std::filesystem::path& path);

/// 64-bit FNV-1a over the bytes of a file.
std::uint64_t file_checksum(const std::filesystem::path& path);

struct Manifest {
    int experiment = 0;
    double alpha = 0.0;
    int m = 0;
    int n = 0;
    std::uint64_t checksum = 0;
    std::uint64_t bytes = 0;
};

void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace fracwave
