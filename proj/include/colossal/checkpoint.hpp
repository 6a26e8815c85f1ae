#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace colossal {

inline constexpr int kCheckpointVersion = 1;

/// Exact decimal image of a CompensatedAccumulator.
struct AccumulatorImage {
  std::string value;
  std::string radius;
  std::string compensation;
  friend bool operator==(const AccumulatorImage&, const AccumulatorImage&) = default;
};

struct Checkpoint {
  int format_version = kCheckpointVersion;
  std::uint64_t pmax = 0;
  std::uint64_t step_index = 0;
  int precision_digits = 30;
  std::vector<std::pair<int, std::uint64_t>> boundaries;  // (k, pi_k)
  AccumulatorImage log_n;
  AccumulatorImage log_rho;
  std::uint64_t ca1 = 0;
  std::uint64_t ca2 = 0;
  std::uint64_t ca3 = 0;
  std::string max_G = "0";
  std::uint64_t max_G_index = 0;
  int max_level = 0;
  std::uint64_t escalations = 0;
  std::uint64_t ties = 0;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string to_json(const Checkpoint& checkpoint);

/// Throws corrupt-checkpoint on malformed input or a version mismatch.
Checkpoint checkpoint_from_json(const std::string& text);

/// Writes to a temporary file and renames it into place. Throws io.
void write_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace colossal
