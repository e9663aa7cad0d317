#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/modular.hpp"

namespace extremal {

enum class ReductionKind {
  Multiplicative,
  PotentiallyMultiplicative,
  PotentiallyGoodAbelian,
  PotentiallyGoodNonabelian,
};

std::string_view to_string(ReductionKind kind) noexcept;
ReductionKind reduction_kind_from_string(std::string_view name);

/// User-supplied reduction data at one bad prime.
///
/// `inertia_order` is only read for PotentiallyGoodAbelian (cyclic inertia of
/// order 2, 3, 4 or 6). `beta`, `sign` and `eps` carry the extra local
/// parameters the potentially-good Euler factors need; they are optional
/// because the conductor bounds do not depend on them.
struct BadPrimeSpec {
  u64 p = 0;
  ReductionKind kind = ReductionKind::Multiplicative;
  int a_p1 = 0;
  int delta1_at_2 = 0;
  int inertia_order = 0;
  std::optional<std::complex<double>> beta;
  std::optional<int> sign;
  std::vector<int> eps;  // eps[n] = tame exponent of Sym^n, when known

  // Throws InconsistentLocalData for out-of-range fields.
  void validate() const;
};

/// -16(4A^3 + 27B^2); throws Overflow instead of wrapping.
i128 discriminant(i64 a, i64 b);

/// y^2 = x^3 + Ax + B over Q. Immutable; construction rejects singular models
/// and bad-prime data that does not divide the discriminant.
class CurveQ {
 public:
  CurveQ(i64 a, i64 b, std::vector<BadPrimeSpec> bad_primes = {}, std::string label = {});

  i64 a() const noexcept { return a_; }
  i64 b() const noexcept { return b_; }
  i128 disc() const noexcept { return disc_; }
  const std::vector<BadPrimeSpec>& bad_primes() const noexcept { return bad_primes_; }
  const std::string& label() const noexcept { return label_; }

  bool divides_disc(u64 p) const;
  const BadPrimeSpec* bad_prime(u64 p) const;

 private:
  i64 a_;
  i64 b_;
  i128 disc_;
  std::vector<BadPrimeSpec> bad_primes_;
  std::string label_;
};

struct ReducedCurve {
  u64 p;
  u64 a;
  u64 b;
};

ReducedCurve reduce_mod_p(const CurveQ& curve, u64 p);

std::string to_string(i128 value);

// One JSON object per line; blank lines are skipped.
CurveQ parse_curve_line(std::string_view line);
std::vector<CurveQ> read_curve_file(const std::filesystem::path& path);

}  // namespace extremal
