#include <cmath>
#include <cstdio>
#include <ostream>

#include "colossal/cli.hpp"

namespace colossal::cli {

namespace {

constexpr Table1Row kRows[] = {
    {1, 0.6931, 2, true, false, -4.0926},   {2, 1.7918, 3, true, false, 3.4294},
    {3, 2.4849, 3, true, false, 2.5634},    {4, 4.0943, 5, true, false, 1.9864},
    {5, 4.7875, 5, true, false, 1.9157},    {6, 5.8861, 5, false, true, 1.8335},
    {7, 7.8320, 7, false, true, 1.8046},    {8, 8.5252, 7, false, true, 1.7910},
    {9, 10.9231, 11, true, false, 1.7512},  {10, 13.4880, 13, false, true, 1.7331},
    {11, 14.1812, 13, false, true, 1.7277}, {12, 15.2798, 13, false, true, 1.7235},
    {13, 16.8892, 13, false, true, 1.7179}, {14, 19.7224, 17, false, false, 1.7243},
    {15, 22.6669, 19, false, true, 1.7342}, {16, 25.8023, 23, false, true, 1.7374},
    {17, 26.4955, 23, false, true, 1.7371}, {18, 29.8628, 29, false, true, 1.7337},
    {19, 33.2968, 31, false, true, 1.7340}, {20, 35.2427, 31, false, true, 1.7369},
    {21, 36.3413, 31, false, true, 1.7364}, {22, 39.9522, 37, false, true, 1.7375},
    {23, 43.6658, 41, false, false, 1.7380}, {24, 47.4270, 43, false, false, 1.7403},
    {25, 48.1201, 43, false, false, 1.7406}, {26, 51.9703, 47, false, true, 1.7430},
};

const char* yn(bool b) { return b ? "Y" : "N"; }

}  // namespace

std::span<const Table1Row> table1_expected() { return kRows; }

int cmd_table1(std::ostream& out, std::ostream& err) {
  std::vector<CARecord> got;
  GeneratorOptions options;
  options.precision = precision_from_env();
  generate(47, [&](const CARecord& r) { got.push_back(r); }, options);

  char line[160];
  std::snprintf(line, sizeof line, "%5s %10s %4s %4s %4s %9s\n", "i", "log n", "P", "CA1", "CA2", "G");
  out << line;
  int mismatches = 0;
  const std::size_t rows = std::max(got.size(), std::size(kRows));
  for (std::size_t i = 0; i < rows; ++i) {
    if (i >= got.size() || i >= std::size(kRows)) {
      err << "row " << i + 1 << ": present on one side only\n";
      ++mismatches;
      continue;
    }
    const CARecord& r = got[i];
    const Table1Row& e = kRows[i];
    const double log_n = r.log_n.approx();
    const double G = r.G.approx();
    const bool ca1 = r.label == ClassLabel::CA1;
    const bool ca2 = r.label == ClassLabel::CA2;
    std::snprintf(line, sizeof line, "%5llu %10.4f %4llu %4s %4s %9.4f", static_cast<unsigned long long>(r.index),
                  log_n, static_cast<unsigned long long>(r.P), yn(ca1), yn(ca2), G);
    std::string diff;
    if (r.index != static_cast<std::uint64_t>(e.index)) diff += " index";
    if (r.P != e.P) diff += " P";
    if (ca1 != e.ca1 || ca2 != e.ca2) diff += " class";
    if (std::fabs(log_n - e.log_n) > kTable1Tolerance) diff += " log_n";
    if (std::fabs(G - e.G) > kTable1Tolerance) diff += " G";
    out << line << (diff.empty() ? "" : "   MISMATCH:" + diff) << '\n';
    if (!diff.empty()) ++mismatches;
  }
  out << (mismatches == 0 ? "all 26 rows match\n" : std::to_string(mismatches) + " row(s) differ\n");
  return mismatches == 0 ? kExitOk : kExitFailed;
}

}  // namespace colossal::cli
