#include "colossal/checkpoint.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "colossal/errors.hpp"
#include "json.hpp"

namespace colossal {

namespace {

using nlohmann::json;

json accumulator_json(const AccumulatorImage& a) {
  return json{{"value", a.value}, {"radius", a.radius}, {"compensation", a.compensation}};
}

AccumulatorImage accumulator_from(const json& j) {
  return {j.at("value").get<std::string>(), j.at("radius").get<std::string>(),
          j.at("compensation").get<std::string>()};
}

}  // namespace

std::string to_json(const Checkpoint& cp) {
  json boundaries = json::array();
  for (const auto& [k, p] : cp.boundaries) boundaries.push_back(json::array({k, p}));
  const json j = {
      {"format_version", cp.format_version},
      {"pmax", cp.pmax},
      {"step_index", cp.step_index},
      {"precision_digits", cp.precision_digits},
      {"boundaries", boundaries},
      {"log_n", accumulator_json(cp.log_n)},
      {"log_rho", accumulator_json(cp.log_rho)},
      {"class_counts", {{"ca1", cp.ca1}, {"ca2", cp.ca2}, {"ca3", cp.ca3}}},
      {"max_G", {{"value", cp.max_G}, {"index", cp.max_G_index}}},
      {"max_level", cp.max_level},
      {"events", {{"escalations", cp.escalations}, {"ties", cp.ties}}},
  };
  return j.dump(2) + "\n";
}

Checkpoint checkpoint_from_json(const std::string& text) {
  Checkpoint cp;
  try {
    const json j = json::parse(text);
    cp.format_version = j.at("format_version").get<int>();
    if (cp.format_version != kCheckpointVersion) {
      throw Error(ErrorKind::CorruptCheckpoint, "checkpoint version " + std::to_string(cp.format_version) +
                                                    ", expected " + std::to_string(kCheckpointVersion));
    }
    cp.pmax = j.at("pmax").get<std::uint64_t>();
    cp.step_index = j.at("step_index").get<std::uint64_t>();
    cp.precision_digits = j.at("precision_digits").get<int>();
    for (const auto& b : j.at("boundaries")) {
      cp.boundaries.emplace_back(b.at(0).get<int>(), b.at(1).get<std::uint64_t>());
    }
    cp.log_n = accumulator_from(j.at("log_n"));
    cp.log_rho = accumulator_from(j.at("log_rho"));
    const auto& counts = j.at("class_counts");
    cp.ca1 = counts.at("ca1").get<std::uint64_t>();
    cp.ca2 = counts.at("ca2").get<std::uint64_t>();
    cp.ca3 = counts.at("ca3").get<std::uint64_t>();
    cp.max_G = j.at("max_G").at("value").get<std::string>();
    cp.max_G_index = j.at("max_G").at("index").get<std::uint64_t>();
    cp.max_level = j.at("max_level").get<int>();
    cp.escalations = j.at("events").at("escalations").get<std::uint64_t>();
    cp.ties = j.at("events").at("ties").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::CorruptCheckpoint, e.what());
  }
  if (cp.precision_digits < 1 || cp.precision_digits > 1000) {
    throw Error(ErrorKind::CorruptCheckpoint, "precision_digits out of range");
  }
  return cp;
}

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << to_json(cp);
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename " + tmp + " to " + path + ": " + ec.message());
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace colossal
