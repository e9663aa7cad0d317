#include "extremal/curves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

i128 checked_mul(i128 x, i128 y) {
  i128 out;
  if (__builtin_mul_overflow(x, y, &out)) throw Error(ErrorKind::Overflow, "discriminant exceeds 128 bits");
  return out;
}

i128 checked_add(i128 x, i128 y) {
  i128 out;
  if (__builtin_add_overflow(x, y, &out)) throw Error(ErrorKind::Overflow, "discriminant exceeds 128 bits");
  return out;
}

using json = nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw Error(ErrorKind::ParseError, std::string(where) + ": unknown field '" + key + "'");
  }
}

template <typename T>
T get_required(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) throw Error(ErrorKind::ParseError, std::string(where) + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string(where) + ": field '" + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, std::string_view where) {
  if (!obj.contains(key)) return fallback;
  return get_required<T>(obj, key, where);
}

BadPrimeSpec parse_bad_prime(const json& obj) {
  if (!obj.is_object()) throw Error(ErrorKind::ParseError, "bad_primes entries must be objects");
  reject_unknown(obj, {"p", "kind", "a_p1", "delta1_at_2", "d", "beta", "sign", "eps"}, "bad_primes");
  BadPrimeSpec spec;
  spec.p = get_required<u64>(obj, "p", "bad_primes");
  spec.kind = reduction_kind_from_string(get_required<std::string>(obj, "kind", "bad_primes"));
  spec.a_p1 = get_or<int>(obj, "a_p1", 0, "bad_primes");
  spec.delta1_at_2 = get_or<int>(obj, "delta1_at_2", 0, "bad_primes");
  spec.inertia_order = get_or<int>(obj, "d", 0, "bad_primes");
  if (obj.contains("beta")) {
    auto parts = get_required<std::vector<double>>(obj, "beta", "bad_primes");
    if (parts.size() != 2) throw Error(ErrorKind::ParseError, "bad_primes: beta must be [re, im]");
    spec.beta = std::complex<double>(parts[0], parts[1]);
  }
  if (obj.contains("sign")) spec.sign = get_required<int>(obj, "sign", "bad_primes");
  spec.eps = get_or<std::vector<int>>(obj, "eps", {}, "bad_primes");
  return spec;
}

}  // namespace

std::string_view to_string(ReductionKind kind) noexcept {
  switch (kind) {
    case ReductionKind::Multiplicative: return "multiplicative";
    case ReductionKind::PotentiallyMultiplicative: return "potentially_multiplicative";
    case ReductionKind::PotentiallyGoodAbelian: return "potentially_good_abelian";
    case ReductionKind::PotentiallyGoodNonabelian: return "potentially_good_nonabelian";
  }
  return "unknown";
}

ReductionKind reduction_kind_from_string(std::string_view name) {
  for (auto kind : {ReductionKind::Multiplicative, ReductionKind::PotentiallyMultiplicative,
                    ReductionKind::PotentiallyGoodAbelian, ReductionKind::PotentiallyGoodNonabelian}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorKind::ParseError, "unknown reduction kind '" + std::string(name) + "'");
}

void BadPrimeSpec::validate() const {
  auto fail = [this](const std::string& why) {
    throw Error(ErrorKind::InconsistentLocalData, "bad prime " + std::to_string(p) + ": " + why);
  };
  if (!is_prime(p)) fail("not a prime");
  if (a_p1 < -1 || a_p1 > 1) fail("a_p1 must be 0, 1 or -1");
  if (delta1_at_2 < 0) fail("delta1_at_2 must be nonnegative");
  if (kind == ReductionKind::PotentiallyGoodAbelian) {
    if (inertia_order != 2 && inertia_order != 3 && inertia_order != 4 && inertia_order != 6)
      fail("abelian inertia order d must be 2, 3, 4 or 6");
  }
  if (beta) {
    double norm = std::norm(*beta);
    if (std::abs(norm - static_cast<double>(p)) > 1e-9 * std::max(1.0, static_cast<double>(p)))
      fail("|beta|^2 must equal p");
  }
  if (sign && *sign != 1 && *sign != -1) fail("sign must be +1 or -1");
  for (std::size_t n = 0; n < eps.size(); ++n) {
    if (eps[n] < 0 || eps[n] > static_cast<int>(n) + 1) fail("eps[n] must lie in [0, n+1]");
  }
}

i128 discriminant(i64 a, i64 b) {
  i128 a3 = checked_mul(checked_mul(a, a), a);
  i128 b2 = checked_mul(b, b);
  i128 inner = checked_add(checked_mul(4, a3), checked_mul(27, b2));
  return checked_mul(-16, inner);
}

CurveQ::CurveQ(i64 a, i64 b, std::vector<BadPrimeSpec> bad_primes, std::string label)
    : a_(a), b_(b), disc_(discriminant(a, b)), bad_primes_(std::move(bad_primes)), label_(std::move(label)) {
  if (disc_ == 0) throw Error(ErrorKind::SingularCurve, "discriminant is zero");
  for (const auto& spec : bad_primes_) {
    spec.validate();
    if (!divides_disc(spec.p))
      throw Error(ErrorKind::InconsistentLocalData,
                  "bad prime " + std::to_string(spec.p) + " does not divide disc " + to_string(disc_));
  }
}

bool CurveQ::divides_disc(u64 p) const { return disc_ % static_cast<i128>(p) == 0; }

const BadPrimeSpec* CurveQ::bad_prime(u64 p) const {
  for (const auto& spec : bad_primes_)
    if (spec.p == p) return &spec;
  return nullptr;
}

ReducedCurve reduce_mod_p(const CurveQ& curve, u64 p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  if (curve.divides_disc(p))
    throw Error(ErrorKind::BadReduction, std::to_string(p) + " divides disc " + to_string(curve.disc()));
  return {p, reduce_signed(curve.a(), p), reduce_signed(curve.b(), p)};
}

std::string to_string(i128 value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  u128 mag = negative ? static_cast<u128>(-(value + 1)) + 1 : static_cast<u128>(value);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

CurveQ parse_curve_line(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!obj.is_object()) throw Error(ErrorKind::ParseError, "curve line must be a JSON object");
  reject_unknown(obj, {"label", "A", "B", "bad_primes"}, "curve");
  auto label = get_or<std::string>(obj, "label", "", "curve");
  auto a = get_required<i64>(obj, "A", "curve");
  auto b = get_required<i64>(obj, "B", "curve");
  std::vector<BadPrimeSpec> bad;
  if (obj.contains("bad_primes")) {
    const auto& arr = obj.at("bad_primes");
    if (!arr.is_array()) throw Error(ErrorKind::ParseError, "bad_primes must be an array");
    for (const auto& entry : arr) bad.push_back(parse_bad_prime(entry));
  }
  return CurveQ(a, b, std::move(bad), std::move(label));
}

std::vector<CurveQ> read_curve_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open curve file " + path.string());
  std::vector<CurveQ> curves;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      curves.push_back(parse_curve_line(line));
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return curves;
}

}  // namespace extremal
