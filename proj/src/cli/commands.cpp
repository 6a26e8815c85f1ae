#include <algorithm>
#include <cctype>
#include <cmath>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "colossal/bounds.hpp"
#include "colossal/checkpoint.hpp"
#include "colossal/cli.hpp"
#include "colossal/errors.hpp"
#include "colossal/parallel.hpp"

namespace colossal::cli {

using nlohmann::json;

Precision precision_from_env() {
  const char* env = std::getenv("COLOSSAL_PRECISION_DIGITS");
  if (env == nullptr || *env == '\0') return Precision{kDefaultDigits};
  char* end = nullptr;
  const long digits = std::strtol(env, &end, 10);
  if (*end != '\0' || digits < 15 || digits > kMaxDigits) {
    throw Error(ErrorKind::InvalidArgument,
                "COLOSSAL_PRECISION_DIGITS must be an integer in 15.." + std::to_string(kMaxDigits));
  }
  return Precision{static_cast<int>(digits)};
}

std::string step_text(std::span<const PrimeLevel> step) {
  std::string s;
  for (const auto& m : step) {
    if (!s.empty()) s += ';';
    s += std::to_string(m.p) + '^' + std::to_string(m.k);
  }
  return s;
}

std::string csv_row(const CARecord& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, ",%llu,%.17g,%.17g,", static_cast<unsigned long long>(r.P), r.log_n.approx(),
                r.G.approx());
  return std::to_string(r.index) + ',' + step_text(r.step) + buf + to_string(r.label);
}

std::string jsonl_row(const CARecord& r) {
  json j = {{"index", r.index},         {"step", step_text(r.step)}, {"P", r.P},
            {"log_n", r.log_n.approx()}, {"G", r.G.approx()},         {"class", to_string(r.label)}};
  return j.dump();
}

json summary_json(const Summary& s, bool with_time) {
  json j = {{"pmax", s.pmax},
            {"total", s.total},
            {"ca1", s.ca1},
            {"ca2", s.ca2},
            {"ca3", s.ca3},
            {"max_G", s.max_G},
            {"max_G_index", s.max_G_index},
            {"max_level", s.max_level},
            {"escalations", s.escalations},
            {"ties", s.ties}};
  if (with_time) j["elapsed_seconds"] = s.elapsed_seconds;
  return j;
}

namespace {

// ---------------------------------------------------------------- output

class RowWriter {
 public:
  RowWriter(const std::string& path, const std::string& format, std::ostream& console)
      : format_(format), path_(path) {
    if (format != "csv" && format != "jsonl") throw Error(ErrorKind::InvalidArgument, "format must be csv or jsonl");
    if (path == "-") {
      os_ = &console;
    } else {
      file_.rdbuf()->pubsetbuf(buffer_, sizeof buffer_);
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(ErrorKind::Io, "cannot open " + path);
      os_ = &file_;
    }
  }

  void header() {
    if (format_ == "csv") *os_ << kCsvHeader << '\n';
  }
  void row(const CARecord& r) { *os_ << (format_ == "csv" ? csv_row(r) : jsonl_row(r)) << '\n'; }

  void flush() {
    os_->flush();
    if (!*os_) throw Error(ErrorKind::Io, "write failed: " + path_);
  }

 private:
  std::string format_;
  std::string path_;
  char buffer_[1 << 16];
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
}

struct RunOutputs {
  std::string summary_path;
  std::string checkpoint_path;
  std::uint64_t checkpoint_every = 0;
};

// Drains the generator into the writer, checkpointing as it goes.
Summary drive(CAGenerator& gen, RowWriter& writer, const RunOutputs& o) {
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t since = 0;
  while (auto rec = gen.next()) {
    writer.row(*rec);
    if (o.checkpoint_every > 0 && ++since == o.checkpoint_every) {
      since = 0;
      writer.flush();  // rows on disk before the checkpoint that covers them
      write_checkpoint(o.checkpoint_path, gen.checkpoint());
    }
  }
  writer.flush();
  if (!o.checkpoint_path.empty()) write_checkpoint(o.checkpoint_path, gen.checkpoint());
  Summary s = gen.summary();
  s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.summary_path.empty()) write_text(o.summary_path, summary_json(s, false).dump(2) + "\n");
  return s;
}

void print_summary(const Summary& s, bool rows_on_stdout, std::ostream& out, std::ostream& err) {
  (rows_on_stdout ? err : out) << summary_json(s, true).dump() << '\n';
}

// ---------------------------------------------------------------- verify plumbing

template <class T>
class Channel {
 public:
  explicit Channel(std::size_t capacity) : capacity_(capacity) {}

  void push(T item) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return items_.size() < capacity_; });
    items_.push_back(std::move(item));
    not_empty_.notify_one();
  }

  void close() {
    std::lock_guard lock(mutex_);
    closed_ = true;
    not_empty_.notify_all();
  }

  /// False once closed and drained.
  bool pop(T& item) {
    std::unique_lock lock(mutex_);
    not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
    if (items_.empty()) return false;
    item = std::move(items_.front());
    items_.pop_front();
    not_full_.notify_one();
    return true;
  }

 private:
  std::size_t capacity_;
  std::deque<T> items_;
  bool closed_ = false;
  std::mutex mutex_;
  std::condition_variable not_empty_, not_full_;
};

using Batch = std::shared_ptr<const std::vector<RecordView>>;
constexpr std::size_t kBatchSize = 4096;

struct Family {
  std::string name;
  RecordChecks::Enabled enabled;
  bool needs_table = false;
};

RecordChecks::Enabled none() {
  RecordChecks::Enabled e;
  e.thm1 = e.thm2 = e.thm3 = e.thm4 = e.chains = e.robin = false;
  return e;
}

std::vector<Family> record_families(const std::set<std::string>& suites) {
  std::vector<Family> out;
  auto add = [&](const char* name, auto set, bool needs_table = false) {
    if (!suites.count(name)) return;
    RecordChecks::Enabled e = none();
    set(e);
    out.push_back({name, e, needs_table});
  };
  add("thm1", [](auto& e) { e.thm1 = true; });
  add("thm2", [](auto& e) { e.thm2 = true; });
  add("thm34", [](auto& e) { e.thm3 = e.thm4 = true; });
  add("chains", [](auto& e) { e.chains = true; });
  add("robin", [](auto& e) { e.robin = true; });
  add("lemma67", [](auto& e) { e.lemma7_chain = e.lemma7_bound = true; }, true);
  return out;
}

// Generation on this thread; each worker owns the RecordChecks of some
// families and sees every batch in index order.
struct RecordRun {
  CheckLog log;
  std::optional<RecordView> max_G;
  Summary summary;
  CheckLog drift;
};

RecordRun run_record_checks(const PrimeSieve& sieve, std::uint64_t pmax, const std::vector<Family>& families,
                            const ThetaTable* table, Precision precision, unsigned threads, bool drift_check) {
  std::vector<std::unique_ptr<RecordChecks>> checks;
  for (const auto& f : families) checks.push_back(std::make_unique<RecordChecks>(f.enabled, table, precision));

  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(families.size()));
  std::vector<std::unique_ptr<Channel<Batch>>> channels;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  if (workers > 1) {
    for (unsigned w = 0; w < workers; ++w) {
      channels.push_back(std::make_unique<Channel<Batch>>(8));
      pool.emplace_back([&, w] {
        Batch batch;
        while (channels[w]->pop(batch)) {
          if (errors[w]) continue;  // keep draining so the producer never blocks
          try {
            for (std::size_t f = w; f < checks.size(); f += workers) {
              for (const auto& r : *batch) checks[f]->observe(r);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        }
      });
    }
  }

  GeneratorOptions options;
  options.precision = precision;
  CAGenerator gen(sieve, pmax, options);
  auto pending = std::make_shared<std::vector<RecordView>>();
  auto dispatch = [&] {
    if (pending->empty()) return;
    if (workers > 1) {
      Batch b = std::move(pending);
      for (auto& c : channels) c->push(b);
    } else {
      for (auto& c : checks) {
        for (const auto& r : *pending) c->observe(r);
      }
    }
    pending = std::make_shared<std::vector<RecordView>>();
    pending->reserve(kBatchSize);
  };
  try {
    while (auto rec = gen.next()) {
      pending->push_back(RecordView::of(*rec));
      if (pending->size() == kBatchSize) dispatch();
    }
    dispatch();
  } catch (...) {
    for (auto& c : channels) c->close();
    for (auto& t : pool) t.join();
    throw;
  }
  for (auto& c : channels) c->close();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RecordRun out;
  for (auto& c : checks) {
    c->finish();
    out.log.merge(c->log());
    if (c->max_G()) out.max_G = c->max_G();
  }
  out.summary = gen.summary();
  if (drift_check && gen.state().index > 0) {
    const FreshSums fresh = recompute_fresh(gen.state(), sieve, precision);
    const std::string in = "pmax=" + std::to_string(pmax) + " i=" + std::to_string(gen.state().index);
    const ExtReal tol = ExtReal::parse("1e-12", "0", precision.bits());
    auto rel = [&](const ExtReal& inc, const ExtReal& ref) {
      ExtReal d = inc - ref;
      if (d.approx() < 0) d = -d;
      return d / ref;
    };
    out.drift.add(assert_relation("drift-log_n", in, rel(gen.state().log_n.value(), fresh.log_n), Relation::LessEq, tol));
    out.drift.add(
        assert_relation("drift-log_rho", in, rel(gen.state().log_rho.value(), fresh.log_rho), Relation::LessEq, tol));
  }
  return out;
}

std::vector<std::uint64_t> sample_primes(std::size_t count, std::uint64_t max, std::uint64_t seed) {
  const PrimeSieve sieve(max + kSieveMargin);
  const std::uint64_t available = sieve.count_primes(max);
  count = std::min<std::uint64_t>(count, available);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(2, max);
  std::set<std::uint64_t> chosen;
  while (chosen.size() < count) {
    std::uint64_t p = dist(rng);
    if (!sieve.is_prime(p)) p = sieve.next_prime(p);
    if (p > max) p = 2;
    chosen.insert(p);
  }
  return {chosen.begin(), chosen.end()};
}

json report_json(const CheckReport& r) {
  json j = {{"inputs", r.inputs}, {"relation", to_string(r.relation)}, {"note", r.note}};
  if (r.verdict != Verdict::Vacuous) {
    j["lhs"] = r.lhs.to_string(20);
    j["rhs"] = r.rhs.to_string(20);
    j["margin"] = r.margin;
  }
  return j;
}

json log_json(const CheckLog& log) {
  json checks = json::array();
  for (const auto& id : log.ids()) {
    const Tally& t = log.tally(id);
    json c = {{"id", id}, {"pass", t.pass}, {"fail", t.fail}, {"vacuous", t.vacuous}, {"informational", t.informational}};
    c["worst_margin"] = std::isfinite(t.worst_margin) ? json(t.worst_margin) : json(nullptr);
    c["worst_inputs"] = t.worst_inputs;
    json failures = json::array();
    for (const auto& f : t.failures) failures.push_back(report_json(f));
    c["failures"] = failures;
    c["vacuous_reasons"] = t.vacuous_reasons;
    checks.push_back(c);
  }
  return checks;
}

std::set<std::string> parse_suites(const std::vector<std::string>& suites) {
  std::set<std::string> out;
  for (const auto& s : suites) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) {
      throw Error(ErrorKind::InvalidArgument, "unknown suite '" + s + "'");
    }
    out.insert(s);
  }
  if (out.empty()) out.insert(kSuites.begin(), kSuites.end());
  return out;
}

constexpr std::uint64_t kLemma6Top = 100'100'000;

std::string fmt_margin(double m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", m);
  return buf;
}

}  // namespace

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  if (o.pmax < 2) throw Error(ErrorKind::InvalidArgument, "pmax must be >= 2");
  RunOutputs ro{o.summary_path, o.checkpoint_path, o.checkpoint_every};
  if (o.checkpoint_every > 0 && ro.checkpoint_path.empty()) {
    if (o.out == "-") throw Error(ErrorKind::InvalidArgument, "--checkpoint needed when rows go to stdout");
    ro.checkpoint_path = o.out + ".ckpt.json";
  }
  GeneratorOptions options;
  options.precision = precision_from_env();
  const PrimeSieve sieve(o.pmax + kSieveMargin);
  CAGenerator gen(sieve, o.pmax, options);
  RowWriter writer(o.out, o.format, out);
  writer.header();
  const Summary s = drive(gen, writer, ro);
  print_summary(s, o.out == "-", out, err);
  return kExitOk;
}

int cmd_resume(const ResumeOptions& o, std::ostream& out, std::ostream& err) {
  const Checkpoint cp = read_checkpoint(o.checkpoint_path);
  GeneratorOptions options;
  options.precision = Precision{cp.precision_digits};
  if (std::getenv("COLOSSAL_PRECISION_DIGITS") != nullptr && precision_from_env() != options.precision) {
    err << "note: resuming at the checkpoint's " << cp.precision_digits << " digits\n";
  }
  const std::uint64_t pmax = o.pmax == 0 ? cp.pmax : o.pmax;
  const PrimeSieve sieve(std::max(pmax, cp.pmax) + kSieveMargin);
  CAGenerator gen(sieve, pmax, cp, options);
  RowWriter writer(o.out, o.format, out);
  RunOutputs ro{o.summary_path, o.checkpoint_out.empty() ? o.checkpoint_path : o.checkpoint_out, o.checkpoint_every};
  const Summary s = drive(gen, writer, ro);
  print_summary(s, o.out == "-", out, err);
  return kExitOk;
}

json verify_report(const VerifyOptions& o, std::ostream& err) {
  const std::set<std::string> suites = parse_suites(o.suites);
  const Precision precision = precision_from_env();
  const unsigned threads = o.threads == 0 ? default_threads() : o.threads;
  CheckLog log;
  json extra = json::object();

  auto run_per_prime = [&](const std::vector<std::uint64_t>& primes, auto check) {
    auto results = parallel_map(primes.size(), threads, [&](std::size_t i) { return check(primes[i]); });
    for (const auto& r : results) log.add(r);
  };

  std::vector<std::uint64_t> primes;
  if (suites.count("lemma1") || suites.count("lemma2") || suites.count("lemma34")) {
    primes = sample_primes(o.samples, o.sample_max, o.seed);
  }
  if (suites.count("lemma1")) {
    err << "lemma1: " << primes.size() << " primes\n";
    run_per_prime(primes, [&](std::uint64_t p) { return check_lemma1(p, 0, precision); });
  }
  if (suites.count("lemma2")) {
    err << "lemma2: " << primes.size() << " primes\n";
    run_per_prime(primes, [&](std::uint64_t p) { return check_lemma2(p, precision); });
  }
  if (suites.count("lemma34")) {
    err << "lemma34: " << primes.size() << " primes\n";
    run_per_prime(primes, [&](std::uint64_t p) { return check_lemma34(p, {}, precision); });
  }
  if (suites.count("lemma5")) {
    err << "lemma5\n";
    log.add(check_lemma5(precision));
  }

  const std::vector<Family> families = record_families(suites);
  const bool oracle = suites.count("oracle") != 0;
  if (!families.empty() || oracle) {
    const bool lemma67 = suites.count("lemma67") != 0;
    const std::uint64_t top = lemma67 ? std::max(o.pmax, kLemma6Top) : o.pmax;
    err << "sieve to " << top + kSieveMargin << "\n";
    const PrimeSieve sieve(top + kSieveMargin);
    std::unique_ptr<ThetaTable> table;
    if (lemma67) {
      table = std::make_unique<ThetaTable>(sieve, top, precision);
      const std::vector<double> samples = lemma6_default_samples();
      log.add(check_lemma6(*table, samples));
    }
    err << "records to pmax " << o.pmax << "\n";
    RecordRun run = run_record_checks(sieve, o.pmax, families, table.get(), precision, threads, oracle);
    log.merge(run.log);
    log.merge(run.drift);
    extra["generation"] = summary_json(run.summary, false);
    if (run.max_G) {
      extra["max_G"] = {{"value", run.max_G->G.to_string(20)}, {"index", run.max_G->index}};
    }
  }
  if (oracle) {
    err << "oracle: first " << o.oracle_first << " records, n <= " << o.oracle_limit << "\n";
    std::vector<CARecord> first;
    GeneratorOptions options;
    options.precision = precision;
    const std::size_t need = o.oracle_first + 1;
    for (std::uint64_t pmax = 64; first.size() < need; pmax *= 4) {
      first.clear();
      generate(pmax, [&](const CARecord& r) { if (first.size() < need) first.push_back(r); }, options);
    }
    log.add(brute_force_ca_oracle(o.oracle_limit, o.oracle_first, first));
  }

  json report = {{"pmax", o.pmax},
                 {"suites", std::vector<std::string>(suites.begin(), suites.end())},
                 {"precision_digits", precision.digits},
                 {"checks", log_json(log)},
                 {"totals", {{"pass", log.passes()}, {"fail", log.failures()}, {"vacuous", log.vacuous_count()}}}};
  report.update(extra);
  return report;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const json report = verify_report(o, err);
  if (!o.report_path.empty()) write_text(o.report_path, report.dump(2) + "\n");

  char line[200];
  std::snprintf(line, sizeof line, "%-16s %10s %6s %10s  %s\n", "check", "pass", "fail", "vacuous", "worst margin");
  out << line;
  for (const auto& c : report["checks"]) {
    const std::string margin = c["worst_margin"].is_null() ? "-" : fmt_margin(c["worst_margin"].get<double>());
    std::snprintf(line, sizeof line, "%-16s %10llu %6llu %10llu  %s%s\n", c["id"].get<std::string>().c_str(),
                  c["pass"].get<unsigned long long>(), c["fail"].get<unsigned long long>(),
                  c["vacuous"].get<unsigned long long>(), margin.c_str(),
                  c["informational"].get<bool>() ? "  (informational)" : "");
    out << line;
  }
  if (report.contains("max_G")) {
    out << "max G " << report["max_G"]["value"].get<std::string>() << " at index " << report["max_G"]["index"] << "\n";
  }
  const auto failures = report["totals"]["fail"].get<std::uint64_t>();
  out << (failures == 0 ? "no failures\n" : std::to_string(failures) + " failure(s)\n");
  return failures == 0 ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- argv

namespace {

// Integer count, also written as 1e8 or 1.001e8.
std::uint64_t parse_count(const std::string& text, const char* what) {
  const bool digits = !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
  if (digits) return std::stoull(text);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v >= 0) || v > 1e18 || v != std::floor(v)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const std::size_t comma = std::min(item.find(',', start), item.size());
      if (comma > start) out.push_back(item.substr(start, comma - start));
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Colossally abundant numbers: enumeration, classification and numeric checks"};
  app.require_subcommand(1);

  std::string pmax_text, every_text, samples_text = "500", sample_max_text = "1000000", oracle_limit_text = "1000000";
  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Enumerate CA numbers with largest prime factor <= pmax");
  g->add_option("--pmax", pmax_text, "Largest prime allowed at exponent 1")->required();
  g->add_option("--out", gen.out, "Output file ('-' for stdout)");
  g->add_option("--format", gen.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  g->add_option("--summary", gen.summary_path, "Also write the summary JSON (without wall time)");
  g->add_option("--checkpoint", gen.checkpoint_path, "Checkpoint file");
  g->add_option("--checkpoint-every", every_text, "Write a checkpoint every N records");

  VerifyOptions ver;
  std::vector<std::string> suites;
  std::string verify_pmax = "1000000";
  auto* v = app.add_subcommand("verify", "Run numeric verification suites");
  v->add_option("--pmax", verify_pmax, "pmax for record-level suites");
  v->add_option("--suite", suites, "Comma-separated subset of " + [] {
    std::string s;
    for (const auto& x : kSuites) s += (s.empty() ? "" : ",") + x;
    return s;
  }());
  v->add_option("--report", ver.report_path, "JSON report path");
  v->add_option("--threads", ver.threads, "Worker threads (default: machine parallelism)");
  v->add_option("--samples", samples_text, "Random primes for lemma1/lemma2/lemma34");
  v->add_option("--sample-max", sample_max_text, "Upper end for the random primes");
  v->add_option("--seed", ver.seed, "Seed for the random primes");
  v->add_option("--oracle-limit", oracle_limit_text, "Exhaustive search bound for the oracle");
  v->add_option("--oracle-first", ver.oracle_first, "Records checked by the oracle");

  auto* t = app.add_subcommand("table1", "Print the first 26 CA numbers and compare with the expected table");

  ResumeOptions res;
  std::string resume_pmax;
  auto* r = app.add_subcommand("resume", "Continue a run from a checkpoint");
  r->add_option("--checkpoint", res.checkpoint_path, "Checkpoint to resume from")->required();
  r->add_option("--pmax", resume_pmax, "New pmax (default: the checkpoint's)");
  r->add_option("--out", res.out, "Output file for the new rows ('-' for stdout)");
  r->add_option("--format", res.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  r->add_option("--summary", res.summary_path, "Also write the summary JSON (without wall time)");
  r->add_option("--checkpoint-out", res.checkpoint_out, "Where to write checkpoints (default: --checkpoint)");
  r->add_option("--checkpoint-every", every_text, "Write a checkpoint every N records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    if (*g) {
      gen.pmax = parse_count(pmax_text, "--pmax");
      if (!every_text.empty()) gen.checkpoint_every = parse_count(every_text, "--checkpoint-every");
      return cmd_generate(gen, std::cout, std::cerr);
    }
    if (*v) {
      ver.pmax = parse_count(verify_pmax, "--pmax");
      ver.samples = parse_count(samples_text, "--samples");
      ver.sample_max = parse_count(sample_max_text, "--sample-max");
      ver.oracle_limit = parse_count(oracle_limit_text, "--oracle-limit");
      ver.suites = split_list(suites);
      return cmd_verify(ver, std::cout, std::cerr);
    }
    if (*t) return cmd_table1(std::cout, std::cerr);
    if (*r) {
      if (!resume_pmax.empty()) res.pmax = parse_count(resume_pmax, "--pmax");
      if (!every_text.empty()) res.checkpoint_every = parse_count(every_text, "--checkpoint-every");
      return cmd_resume(res, std::cout, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.is_invariant_violation()) return kExitInternal;
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::Io:
      case ErrorKind::CorruptCheckpoint:
        return kExitIo;
      default:
        return kExitInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitIo;
}

}  // namespace colossal::cli
