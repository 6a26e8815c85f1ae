#include <cmath>
#include <string>

#include "colossal/bounds.hpp"
#include "colossal/errors.hpp"
#include "colossal/kernels.hpp"

namespace colossal {

namespace {

constexpr double kSlack = 1e-12;

ExtReal as_ext(double v) { return ExtReal::from_double(v, 64); }

}  // namespace

std::vector<std::uint64_t> sigma_table(std::uint64_t limit) {
  std::vector<std::uint64_t> sigma(limit + 1, 0);
  for (std::uint64_t d = 1; d <= limit; ++d) {
    for (std::uint64_t m = d; m <= limit; m += d) sigma[m] += d;
  }
  return sigma;
}

std::vector<CheckReport> brute_force_ca_oracle(std::uint64_t limit, std::size_t first_m,
                                               std::span<const CARecord> records) {
  if (limit < 2) throw Error(ErrorKind::InvalidArgument, "oracle limit must be >= 2");
  if (records.size() < first_m + 1) throw Error(ErrorKind::InvalidArgument, "oracle needs first_m + 1 records");

  const std::vector<std::uint64_t> sigma = sigma_table(limit);
  // index j holds n = j + 2
  std::vector<double> a(limit - 1), b(limit - 1);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    a[n - 2] = std::log(static_cast<double>(sigma[n]) / static_cast<double>(n));
    b[n - 2] = std::log(static_cast<double>(n));
  }
  const std::span<const double> as(a), bs(b);
  auto value = [&](std::size_t j, double eps) { return std::fma(-eps, b[j], a[j]); };

  std::vector<CheckReport> out;
  for (std::size_t r = 0; r < first_m; ++r) {
    const CARecord& rec = records[r];
    const double nd = std::exp(rec.log_n.approx());
    const std::uint64_t n = static_cast<std::uint64_t>(std::llround(nd));
    const std::string in = "i=" + std::to_string(rec.index) + " n=" + std::to_string(n);
    if (n < 2 || n > limit) {
      out.push_back(vacuous("oracle-eps", in, "n beyond the search limit"));
      out.push_back(vacuous("oracle-mid", in, "n beyond the search limit"));
      out.push_back(vacuous("oracle-unique", in, "n beyond the search limit"));
      continue;
    }
    const std::size_t j = n - 2;

    // At eps_i the maximum is shared with n_{i-1}; n_i must attain it.
    const double eps = rec.eps.approx();
    const kernels::ArgMax best = kernels::argmax_affine(as, bs, eps);
    out.push_back(assert_relation("oracle-eps", in, as_ext(value(j, eps) + kSlack), Relation::GreaterEq,
                                  as_ext(best.value)));

    // Strictly between eps_{i+1} and eps_i, n_i alone is the maximizer.
    const double mid = 0.5 * (eps + records[r + 1].eps.approx());
    const kernels::ArgMax at_mid = kernels::argmax_affine(as, bs, mid);
    CheckReport hit;
    hit.id = "oracle-mid";
    hit.inputs = in + " argmax=" + std::to_string(at_mid.index + 2);
    hit.lhs = as_ext(static_cast<double>(at_mid.index + 2));
    hit.rhs = as_ext(static_cast<double>(n));
    hit.relation = Relation::GreaterEq;  // reported as equality of the two indices
    hit.verdict = at_mid.index == j ? Verdict::Pass : Verdict::Fail;
    hit.margin = at_mid.index == j ? 0.0 : -1.0;
    out.push_back(hit);

    double second = -INFINITY;
    if (j > 0) second = kernels::argmax_affine(as.first(j), bs.first(j), mid).value;
    if (j + 1 < a.size()) second = std::max(second, kernels::argmax_affine(as.subspan(j + 1), bs.subspan(j + 1), mid).value);
    out.push_back(assert_relation("oracle-unique", in, as_ext(value(j, mid) - second), Relation::Greater,
                                  as_ext(kSlack)));
  }
  return out;
}

}  // namespace colossal
