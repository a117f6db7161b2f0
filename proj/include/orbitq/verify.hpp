#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "orbitq/factorizations.hpp"
#include "orbitq/group.hpp"
#include "orbitq/io.hpp"
#include "orbitq/oracle.hpp"
#include "orbitq/point.hpp"
#include "orbitq/quotient.hpp"

namespace orbitq::verify {

struct SuiteOptions {
  std::vector<FieldTag> fields{FieldTag::Real, FieldTag::Complex};
  std::optional<std::size_t> n;       // restrict to one dimension
  std::optional<std::size_t> k;       // restrict to one k where the suite sweeps k
  std::optional<std::size_t> trials;  // override the per-suite default
  std::uint64_t seed = 0;
};

struct SuiteReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> failed_cases;  // first few, each with the seed that replays it

  SuiteReport() = default;
  explicit SuiteReport(std::string n) : name(std::move(n)) {}

  bool passed() const { return failures == 0 && trials > 0; }

  void record(bool ok, double residual, const std::string& where) {
    ++trials;
    if (std::isfinite(residual)) max_residual = std::max(max_residual, residual);
    else max_residual = std::numeric_limits<double>::infinity();
    if (!ok) {
      ++failures;
      if (failed_cases.size() < 8) failed_cases.push_back(where);
    }
  }
};

inline json report_to_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.name;
  j["passed"] = r.passed();
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["max_residual"] = r.max_residual;
  j["threshold"] = r.threshold;
  j["seed"] = r.seed;
  j["failed_cases"] = r.failed_cases;
  return j;
}

/// Seed of one trial, derived from the run seed and the trial's coordinates.
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t suite, FieldTag field, std::size_t k, std::size_t n,
                                std::size_t trial) {
  const std::uint64_t coord = (static_cast<std::uint64_t>(field == FieldTag::Complex) << 60) ^
                              (static_cast<std::uint64_t>(k) << 56) ^ (static_cast<std::uint64_t>(n) << 40) ^ trial;
  return mix_seed(mix_seed(base, suite), coord);
}

inline std::string case_label(FieldTag f, std::size_t k, std::size_t n, std::size_t trial, std::uint64_t seed) {
  return "field=" + std::string(to_string(f)) + " k=" + std::to_string(k) + " n=" + std::to_string(n) +
         " trial=" + std::to_string(trial) + " seed=" + std::to_string(seed);
}

inline std::vector<std::size_t> dims(const SuiteOptions& o, std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n)
    if (!o.n || *o.n == n) out.push_back(n);
  return out;
}

inline std::vector<std::size_t> ks(const SuiteOptions& o) {
  std::vector<std::size_t> out;
  for (std::size_t k : {1u, 2u})
    if (!o.k || *o.k == k) out.push_back(k);
  return out;
}

/// Runs body<T>() for each requested field.
template <class Body>
void for_fields(const SuiteOptions& o, Body&& body) {
  for (FieldTag f : o.fields) {
    if (f == FieldTag::Real) body.template operator()<double>();
    else body.template operator()<Complex>();
  }
}

/**
 * Self-adjoint n x n matrix U diag(s) U* whose spectrum has a pair of
 * eigenvalues exactly `gap` apart; the pair sits at the bottom of the spectrum
 * half of the time.
 */
template <FieldScalar T>
Hermitian<T> clustered_hermitian(std::size_t n, double gap, Rng& rng) {
  std::vector<double> spectrum(n);
  for (auto& x : spectrum) x = rng.normal();
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  if (n >= 2) {
    const std::size_t i = (rng.next_u64() & 1) ? n - 2 : static_cast<std::size_t>(rng.next_u64() % (n - 1));
    spectrum[i + 1] = spectrum[i] - gap;
  }
  const auto u = random_orthogonal<T>(n, rng);
  return reconstruct(u.C, spectrum);
}

// Criterion thresholds.
inline constexpr double kInvarianceTol = 1e-7;
inline constexpr double kSectionTol = 1e-7;
inline constexpr double kPreimageTol = 1e-8;
inline constexpr double kSectionRoundTripTol = 1e-9;
inline constexpr double kAlignmentSameTol = 1e-6;
inline constexpr double kSignatureSeparation = 1e-3;
inline constexpr double kTinyFiberTol = 1e-9;
inline constexpr double kContinuityPassRate = 0.95;
inline constexpr double kGammaPhaseSpread = 3.0;

/// evaluate_k1 is constant on SO(W)-orbits; under O(W), v is fixed and nu scales by det C.
inline SuiteReport orbit_invariance_k1(const SuiteOptions& o) {
  SuiteReport r{"orbit-invariance-k1"};
  r.threshold = kInvarianceTol;
  r.seed = o.seed;
  const std::size_t trials = o.trials.value_or(1000);
  for_fields(o, [&]<FieldScalar T>() {
    for (std::size_t n : dims(o, 1, 6))
      for (std::size_t t = 0; t < trials; ++t) {
        const auto s = trial_seed(o.seed, 1, field_of<T>, 1, n, t);
        Rng rng(s);
        const auto p = random_point<T>(n, 1, rng);
        const auto q = evaluate_k1(p);
        const auto special = random_special<T>(n, rng);
        const double d_special = relative_quotient_distance(q, evaluate_k1(act_point(special, p)));
        const auto general = random_orthogonal<T>(n, rng);
        QuotientValue expected = q;
        expected.nu = *q.nu * to_complex(general.detC);
        const double d_general = relative_quotient_distance(expected, evaluate_k1(act_point(general, p)));
        const double res = std::max(d_special, d_general);
        r.record(res <= kInvarianceTol, res, case_label(field_of<T>, 1, n, t, s));
      }
  });
  return r;
}

/// evaluate_k2 is constant on O(W)-orbits.
inline SuiteReport orbit_invariance_k2(const SuiteOptions& o) {
  SuiteReport r{"orbit-invariance-k2"};
  r.threshold = kInvarianceTol;
  r.seed = o.seed;
  const std::size_t trials = o.trials.value_or(1000);
  for_fields(o, [&]<FieldScalar T>() {
    for (std::size_t n : dims(o, 0, 6))
      for (std::size_t t = 0; t < trials; ++t) {
        const auto s = trial_seed(o.seed, 2, field_of<T>, 2, n, t);
        Rng rng(s);
        const auto p = random_point<T>(n, 2, rng);
        const auto c = random_orthogonal<T>(n, rng);
        const double res = relative_quotient_distance(evaluate_k2(p), evaluate_k2(act_point(c, p)));
        r.record(res <= kInvarianceTol, res, case_label(field_of<T>, 2, n, t, s));
      }
  });
  return r;
}

/**
 * Replacing the section factor Y by Y Q, Q in O(W1), at every level of the
 * tower leaves the quotient value unchanged. Every other trial uses a coset
 * whose spectrum has an exactly repeated eigenvalue.
 */
inline SuiteReport section_independence(const SuiteOptions& o) {
  SuiteReport r{"section-independence"};
  r.threshold = kSectionTol;
  r.seed = o.seed;
  const std::size_t trials = o.trials.value_or(500);
  for_fields(o, [&]<FieldScalar T>() {
    for (std::size_t k : ks(o))
      for (std::size_t n : dims(o, 2 - k, 6))
        for (std::size_t t = 0; t < trials; ++t) {
          const auto s = trial_seed(o.seed, 3, field_of<T>, k, n, t);
          Rng rng(s);
          auto p = random_point<T>(n, k, rng);
          if (t % 2 == 1 && n >= 2) p.cosetA = Coset<T>(clustered_hermitian<T>(n, 0.0, rng));
          auto twist = [&rng](Matrix<T>& y) {
            if (y.cols() > 0) y = y * random_orthogonal<T>(y.cols(), rng).C;
          };
          const double res = relative_quotient_distance(evaluate(p), evaluate(p, twist));
          r.record(res <= kSectionTol, res, case_label(field_of<T>, k, n, t, s));
        }
  });
  return r;
}

/**
 * preimage_cor22 hits random (coset, lambda) targets, and section_pi0 followed
 * by Z -> (Z|W1 (Z|W1)* + RE, Z|F^k) returns random points.
 */
inline SuiteReport surjectivity(const SuiteOptions& o) {
  SuiteReport r{"surjectivity"};
  r.threshold = kPreimageTol;
  r.seed = o.seed;
  const std::size_t trials = o.trials.value_or(500);
  for_fields(o, [&]<FieldScalar T>() {
    for (std::size_t n : dims(o, 1, 6))
      for (std::size_t t = 0; t < trials; ++t) {
        const auto s = trial_seed(o.seed, 4, field_of<T>, 0, n, t);
        Rng rng(s);
        const Coset<T> c(rng.gaussian_hermitian<T>(n));
        const T lambda = t % 10 == 0 ? T(0.0) : rng.gaussian<T>();
        const Matrix<T> x = preimage_cor22(c, lambda);
        const auto [g, d] = pi_so(x);
        const double coset_res = coset_distance(Coset<T>(g), c) / std::max(1.0, frobenius_norm(c.traceless().matrix()));
        const double det_res = abs(d - lambda) / std::max(1.0, abs(lambda));
        const bool in_m = in_M(MPoint<T>{g, d}, kPreimageTol);
        const double res_pre = std::max(coset_res, det_res);
        r.record(in_m && res_pre <= kPreimageTol, res_pre, "preimage " + case_label(field_of<T>, 0, n, t, s));

        const std::size_t k = 1 + (t % 2);
        const auto p = random_point<T>(n, k, rng);
        const Matrix<T> z = section_pi0(p);
        const Matrix<T> y = z.block(0, 0, n, n - 1);
        const Matrix<T> b = z.block(0, n - 1, n, k);
        const double scale = std::max({1.0, frobenius_norm(p.cosetA.traceless().matrix()), frobenius_norm(p.B)});
        const double res_sec =
            std::max(coset_distance(Coset<T>(gram(y)), p.cosetA), frobenius_norm(b - p.B)) / scale;
        r.record(res_sec <= kSectionRoundTripTol, res_sec, "section " + case_label(field_of<T>, k, n, t, s));
      }
  });
  return r;
}

/**
 * The exact SO-orbit test on End(W) agrees with numerical alignment on planted
 * same-orbit pairs and on signature-separated pairs. Also checks, on points,
 * that alignment-found and planted pairs have equal k = 2 quotient values and
 * signature-separated pairs have different ones.
 */
inline SuiteReport oracle_agreement(const SuiteOptions& o) {
  SuiteReport r{"oracle-agreement"};
  r.threshold = 0.0;
  r.seed = o.seed;
  const std::size_t pairs = o.trials.value_or(200);
  constexpr std::size_t kPositiveRestarts = 200;
  constexpr std::size_t kNegativeRestarts = 50;
  for_fields(o, [&]<FieldScalar T>() {
    for (std::size_t n : dims(o, 2, 3)) {
      for (std::size_t t = 0; t < 2 * pairs; ++t) {
        const bool planted = t < pairs;
        const auto s = trial_seed(o.seed, 5, field_of<T>, 0, n, t);
        Rng rng(s);
        const Matrix<T> x = rng.gaussian_matrix<T>(n, n);
        Matrix<T> y;
        if (planted) {
          y = act_end(random_special<T>(n, rng), x);
        } else {
          // Same Gram matrix, determinant moved off by a reflection or a large phase; or an unrelated matrix.
          for (int attempt = 0; attempt < 100; ++attempt) {
            if (t % 2 == 0) {
              y = x;
              T u(-1.0);
              if constexpr (is_complex_v<T>) u = std::polar(1.0, rng.uniform(0.5, 1.5) * std::numbers::pi);
              for (std::size_t i = 0; i < n; ++i) y(i, n - 1) *= u;
              y = act_end(random_special<T>(n, rng), y);
            } else {
              y = rng.gaussian_matrix<T>(n, n);
            }
            if (max_abs_difference(end_signature(x), end_signature(y)) > kSignatureSeparation) break;
          }
        }
        const bool exact = so_orbit_equal(x, y);
        const double dist = alignment_search_end(x, y, planted ? kPositiveRestarts : kNegativeRestarts, s);
        const bool aligned = dist <= kAlignmentSameTol * std::max(1.0, frobenius_norm(y));
        const bool ok = exact == aligned && exact == planted;
        r.record(ok, ok ? 0.0 : 1.0, "end " + case_label(field_of<T>, 0, n, t, s));
      }

      const std::size_t point_pairs = std::max<std::size_t>(pairs / 4, 1);
      for (std::size_t t = 0; t < 2 * point_pairs; ++t) {
        const bool planted = t < point_pairs;
        const auto s = trial_seed(o.seed, 6, field_of<T>, 2, n, t);
        Rng rng(s);
        const auto p = random_point<T>(n, 2, rng);
        const auto q = planted ? act_point(random_orthogonal<T>(n, rng), p) : random_point<T>(n, 2, rng);
        const double dq = relative_quotient_distance(evaluate_k2(p), evaluate_k2(q));
        bool ok;
        if (planted) {
          const double dist = alignment_search(p, q, kPositiveRestarts, s);
          ok = dist <= kInvarianceTol * std::max(1.0, frobenius_norm(q.B)) && dq <= kInvarianceTol;
        } else {
          const double sig = signature_distance(signature(p), signature(q));
          ok = sig <= 1e-5 || dq > kInvarianceTol;
        }
        r.record(ok, ok ? 0.0 : 1.0, "point " + case_label(field_of<T>, 2, n, t, s));
      }
    }
  });
  return r;
}

/**
 * n = 1, k = 2. Over R, an exhaustive 201 x 201 grid of B in [-1, 1]^2: values
 * coincide iff b' = +-b. Over C, sampled phases: values are constant on the
 * circle orbit c b and change under a relative phase twist of the entries.
 */
inline SuiteReport tiny_fiber(const SuiteOptions& o) {
  SuiteReport r{"tiny-fiber"};
  r.threshold = kTinyFiberTol;
  r.seed = o.seed;
  for (FieldTag f : o.fields) {
    if (f == FieldTag::Real) {
      constexpr int kSide = 201;
      struct Entry {
        double b1, b2;
        std::vector<double> v;
      };
      std::vector<Entry> grid;
      grid.reserve(kSide * kSide);
      for (int i = 0; i < kSide; ++i)
        for (int j = 0; j < kSide; ++j) {
          const double b1 = (i - 100) / 100.0, b2 = (j - 100) / 100.0;
          const ReprPoint<double> p(Coset<double>(1), Matrix<double>{{b1, b2}});
          grid.push_back({b1, b2, evaluate_k2(p).v});
        }
      std::vector<std::size_t> order(grid.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a].v < grid[b].v; });
      auto same_orbit = [&](const Entry& a, const Entry& b) {
        const bool plus = std::abs(a.b1 - b.b1) <= kTinyFiberTol && std::abs(a.b2 - b.b2) <= kTinyFiberTol;
        const bool minus = std::abs(a.b1 + b.b1) <= kTinyFiberTol && std::abs(a.b2 + b.b2) <= kTinyFiberTol;
        return plus || minus;
      };
      // Equal values => same orbit, scanning the window of near-equal first coordinates.
      std::size_t equal_pairs = 0, bad_pairs = 0;
      for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) {
          const Entry& ea = grid[order[a]];
          const Entry& eb = grid[order[b]];
          if (eb.v[0] - ea.v[0] > kTinyFiberTol) break;
          if (std::abs(ea.v[1] - eb.v[1]) > kTinyFiberTol) continue;
          ++equal_pairs;
          if (!same_orbit(ea, eb)) ++bad_pairs;
        }
      r.record(bad_pairs == 0, static_cast<double>(bad_pairs), "grid equal=>orbit pairs=" + std::to_string(equal_pairs));
      // Same orbit => equal values: -b is on the grid at the mirrored index.
      double worst = 0.0;
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const Entry& e = grid[idx];
        const Entry& m = grid[grid.size() - 1 - idx];
        for (std::size_t c = 0; c < e.v.size(); ++c) worst = std::max(worst, std::abs(e.v[c] - m.v[c]));
      }
      r.record(worst <= kTinyFiberTol, worst, "grid orbit=>equal");
    } else {
      const std::size_t samples = o.trials.value_or(200);
      constexpr int kPhases = 64;
      for (std::size_t t = 0; t < samples; ++t) {
        const auto s = trial_seed(o.seed, 7, FieldTag::Complex, 2, 1, t);
        Rng rng(s);
        const Matrix<Complex> b = rng.gaussian_matrix<Complex>(1, 2);
        const QuotientValue q0 = evaluate_k2(ReprPoint<Complex>(Coset<Complex>(1), b));
        double worst_same = 0.0;
        bool separated = true;
        const bool generic = abs(b(0, 0)) * abs(b(0, 1)) >= 0.1;
        for (int m = 0; m < kPhases; ++m) {
          const Complex c = std::polar(1.0, 2.0 * std::numbers::pi * m / kPhases);
          worst_same = std::max(
              worst_same, relative_quotient_distance(q0, evaluate_k2(ReprPoint<Complex>(Coset<Complex>(1), b * c))));
          if (m == 0 || !generic) continue;
          Matrix<Complex> twisted = b;
          twisted(0, 1) *= c;
          if (relative_quotient_distance(q0, evaluate_k2(ReprPoint<Complex>(Coset<Complex>(1), twisted))) <=
              kTinyFiberTol)
            separated = false;
        }
        r.record(worst_same <= kTinyFiberTol && separated, worst_same,
                 case_label(FieldTag::Complex, 2, 1, t, s));
      }
    }
  }
  return r;
}

/**
 * gamma(c l, c^-1 m) = gamma(l, m) to rounding for unit c; the image takes
 * both signs of t and (over C) phases of nu spread over more than 3 radians;
 * random targets (t, nu) have explicit preimages.
 */
inline SuiteReport gamma_fiber(const SuiteOptions& o) {
  SuiteReport r{"gamma"};
  r.seed = o.seed;
  r.threshold = 8.0 * std::numeric_limits<double>::epsilon();
  const std::size_t trials = o.trials.value_or(10000);
  for_fields(o, [&]<FieldScalar T>() {
    bool pos = false, neg = false;
    double lo = INFINITY, hi = -INFINITY;
    double worst_inv = 0.0, worst_pre = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto s = trial_seed(o.seed, 8, field_of<T>, 0, 0, t);
      Rng rng(s);
      const T l = rng.gaussian<T>(), m = rng.gaussian<T>(), c = rng.unit<T>();
      const auto [t0, nu0] = gamma(l, m);
      const auto [t1, nu1] = gamma(T(c * l), T(conj(c) * m));
      const double scale = abs2(l) + abs2(m);
      const double inv = std::max(std::abs(t1 - t0), abs(nu1 - nu0)) / std::max(scale, 1e-300);
      worst_inv = std::max(worst_inv, inv);
      r.record(inv <= r.threshold, inv, "invariance " + case_label(field_of<T>, 0, 0, t, s));
      pos |= t0 > 0.0;
      neg |= t0 < 0.0;
      if constexpr (is_complex_v<T>) {
        const double a = std::arg(nu0);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      // Preimage of (tt, nn): |l|^2 = (tt + sqrt(tt^2 + 4|nn|^2)) / 2, m = nn / l.
      const double tt = rng.normal();
      const T nn = rng.gaussian<T>();
      const double h = std::hypot(tt, 2.0 * abs(nn));
      const double l2 = tt >= 0.0 ? 0.5 * (tt + h) : (h > -tt ? 2.0 * abs2(nn) / (h - tt) : 0.0);
      const T lp(std::sqrt(l2));
      const T mp = l2 > 0.0 ? T(nn / lp) : T(std::sqrt(std::max(-tt, 0.0)));
      const auto [tt2, nn2] = gamma(lp, mp);
      const double pre = std::max(std::abs(tt2 - tt), abs(nn2 - nn)) / std::max(1.0, std::abs(tt) + abs(nn));
      worst_pre = std::max(worst_pre, pre);
      r.record(pre <= 1e-12, pre, "preimage " + case_label(field_of<T>, 0, 0, t, s));
    }
    r.record(pos && neg, 0.0, "t takes both signs, field=" + std::string(to_string(field_of<T>)));
    if constexpr (is_complex_v<T>) r.record(hi - lo > kGammaPhaseSpread, 0.0, "nu phase spread");
  });
  return r;
}

/**
 * For random p and unit direction h, r(e) = |q(p + e h) - q(p)| / (|q(p + e h)| + 1)
 * must not increase as e runs 1e-2, 1e-3, 1e-4. Each configuration must pass
 * on at least 95% of trials; every other trial starts within 1e-6 of a
 * spectral degeneracy.
 */
inline SuiteReport continuity(const SuiteOptions& o) {
  SuiteReport r{"continuity"};
  r.threshold = kContinuityPassRate;
  r.seed = o.seed;
  const std::size_t trials = o.trials.value_or(1000);
  for_fields(o, [&]<FieldScalar T>() {
    for (std::size_t k : ks(o))
      for (std::size_t n : dims(o, 2 - k, 6)) {
        std::size_t passes = 0;
        std::string first_fail;
        for (std::size_t t = 0; t < trials; ++t) {
          const auto s = trial_seed(o.seed, 9, field_of<T>, k, n, t);
          Rng rng(s);
          auto p = random_point<T>(n, k, rng);
          if (t % 2 == 1 && n >= 2) p.cosetA = Coset<T>(clustered_hermitian<T>(n, rng.uniform(0.0, 1e-6), rng));
          Hermitian<T> dh = rng.gaussian_hermitian<T>(n);
          Matrix<T> db = rng.gaussian_matrix<T>(n, k);
          const double nrm = std::hypot(frobenius_norm(dh.matrix()), frobenius_norm(db));
          if (nrm > 0.0) {
            dh = (1.0 / nrm) * dh;
            db *= T(1.0 / nrm);
          }
          const auto q0 = flatten(evaluate(p));
          double prev = INFINITY;
          bool ok = true;
          for (double e : {1e-2, 1e-3, 1e-4}) {
            const ReprPoint<T> pe(Coset<T>(p.cosetA.rep() + e * dh), p.B + db * T(e));
            const auto qe = flatten(evaluate(pe));
            std::vector<double> diff(qe.size());
            for (std::size_t i = 0; i < qe.size(); ++i) diff[i] = qe[i] - q0[i];
            const double ratio = euclidean_norm(diff) / (euclidean_norm(qe) + 1.0);
            if (ratio > prev * (1.0 + 1e-9) + 1e-15) ok = false;
            prev = ratio;
          }
          if (ok) ++passes;
          else if (first_fail.empty()) first_fail = case_label(field_of<T>, k, n, t, s);
        }
        const double rate = static_cast<double>(passes) / static_cast<double>(trials);
        r.record(rate >= kContinuityPassRate, 1.0 - rate,
                 "pass rate " + std::to_string(rate) + " first failure: " + first_fail);
      }
  });
  return r;
}

namespace detail {

inline bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace detail

/// Output length equals dim_V, nu is present iff k = 1, and JSON round trips are bit-exact.
inline SuiteReport layout(const SuiteOptions& o) {
  SuiteReport r{"layout"};
  r.seed = o.seed;
  const std::size_t trials = o.trials.value_or(20);
  for_fields(o, [&]<FieldScalar T>() {
    for (std::size_t k : ks(o))
      for (std::size_t n : dims(o, 2 - k, 6))
        for (std::size_t t = 0; t < trials; ++t) {
          const auto s = trial_seed(o.seed, 10, field_of<T>, k, n, t);
          Rng rng(s);
          const auto p = random_point<T>(n, k, rng);
          const auto q = evaluate(p);
          bool ok = q.v.size() == dim_V(field_of<T>, k, n) && q.nu.has_value() == (k == 1);
          const std::string text = quotient_to_json(q).dump();
          const auto back = quotient_from_json(json::parse(text));
          ok = ok && detail::bit_equal(flatten(q), flatten(back)) && quotient_to_json(back).dump() == text;
          const std::string ptext = point_to_json(p).dump();
          const auto pback = std::get<ReprPoint<T>>(point_from_string(ptext));
          ok = ok && pback.cosetA.rep() == p.cosetA.rep() && pback.B == p.B && point_to_json(pback).dump() == ptext;
          r.record(ok, ok ? 0.0 : 1.0, case_label(field_of<T>, k, n, t, s));
        }
  });
  return r;
}

struct Suite {
  const char* name;
  SuiteReport (*run)(const SuiteOptions&);
};

inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"orbit-invariance-k1", orbit_invariance_k1}, {"orbit-invariance-k2", orbit_invariance_k2},
      {"section-independence", section_independence}, {"surjectivity", surjectivity},
      {"oracle-agreement", oracle_agreement},         {"tiny-fiber", tiny_fiber},
      {"gamma", gamma_fiber},                         {"continuity", continuity},
      {"layout", layout},
  };
  return all;
}

/// Suites selected by name; "orbit-invariance" selects both k variants and "all" selects everything.
inline std::vector<Suite> select_suites(const std::string& name) {
  std::vector<Suite> out;
  for (const auto& s : suites()) {
    const std::string sn = s.name;
    if (name == "all" || sn == name || (name == "orbit-invariance" && sn.rfind("orbit-invariance", 0) == 0))
      out.push_back(s);
  }
  if (out.empty()) throw InvalidInput("unknown suite: " + name);
  return out;
}

}  // namespace orbitq::verify
