#pragma once

// Command implementations behind the `colossal` executable. Each returns the
// process exit code; output goes to the given streams so tests can run them
// in-process.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "colossal/ext_real.hpp"
#include "colossal/generator.hpp"
#include "json.hpp"

namespace colossal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitIo = 2;  // also usage errors and bad checkpoints
inline constexpr int kExitInternal = 3;

/// COLOSSAL_PRECISION_DIGITS, default 30. Throws invalid-argument outside 15..120.
Precision precision_from_env();

inline constexpr const char* kCsvHeader = "index,step,P,log_n,G,class";
std::string csv_row(const CARecord& r);
std::string jsonl_row(const CARecord& r);
/// `p^k` joined by `;`.
std::string step_text(std::span<const PrimeLevel> step);

/// Summary keys; elapsed_seconds only when `with_time`.
nlohmann::json summary_json(const Summary& s, bool with_time);

struct GenerateOptions {
  std::uint64_t pmax = 0;
  std::string out = "-";  // "-" is standard output
  std::string format = "csv";  // csv | jsonl
  std::string summary_path;  // optional; never contains wall time
  std::string checkpoint_path;  // default <out>.ckpt.json when checkpoint_every > 0
  std::uint64_t checkpoint_every = 0;  // records; 0 writes only a final checkpoint if a path is given
};
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);

struct ResumeOptions {
  std::string checkpoint_path;
  std::uint64_t pmax = 0;
  std::string out = "-";
  std::string format = "csv";
  std::string summary_path;
  std::string checkpoint_out;  // default: overwrite checkpoint_path
  std::uint64_t checkpoint_every = 0;
};
/// Rows continue the earlier file without a header, so the outputs concatenate.
int cmd_resume(const ResumeOptions& options, std::ostream& out, std::ostream& err);

inline const std::vector<std::string> kSuites = {"lemma1", "lemma2", "lemma34", "lemma5", "lemma67", "thm1",
                                                 "thm2",   "thm34",  "chains",  "robin",  "oracle"};

struct VerifyOptions {
  std::uint64_t pmax = 1'000'000;
  std::vector<std::string> suites;  // empty means all
  std::string report_path;
  unsigned threads = 0;  // 0: machine parallelism
  std::size_t samples = 500;  // random primes for lemma1/lemma2/lemma34
  std::uint64_t sample_max = 1'000'000;
  std::uint64_t seed = 20240607;
  std::uint64_t oracle_limit = 1'000'000;
  std::size_t oracle_first = 10;
};

/// Runs the suites and returns the report document ("failures" counts only
/// non-informational checks).
nlohmann::json verify_report(const VerifyOptions& options, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

struct Table1Row {
  int index;
  double log_n;
  std::uint64_t P;
  bool ca1;
  bool ca2;
  double G;
};
std::span<const Table1Row> table1_expected();
inline constexpr double kTable1Tolerance = 1.5e-4;
int cmd_table1(std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; maps exceptions to exit codes.
int run(int argc, char** argv);

}  // namespace colossal::cli
