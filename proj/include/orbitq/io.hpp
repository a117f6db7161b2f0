#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "orbitq/group.hpp"
#include "orbitq/point.hpp"
#include "orbitq/quotient.hpp"

namespace orbitq {

using json = nlohmann::ordered_json;

/// Malformed JSON or a document that does not follow the point schema.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyPoint = std::variant<ReprPoint<double>, ReprPoint<Complex>>;

inline FieldTag point_field(const AnyPoint& p) { return p.index() == 0 ? FieldTag::Real : FieldTag::Complex; }

inline FieldTag parse_field(const std::string& s) {
  if (s == "R") return FieldTag::Real;
  if (s == "C") return FieldTag::Complex;
  throw ParseError("field must be \"R\" or \"C\", got \"" + s + "\"");
}

namespace detail {

template <FieldScalar T>
T scalar_from_json(const json& j) {
  double re = 0.0, im = 0.0;
  if (j.is_number()) {
    re = j.get<double>();
  } else if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    re = j[0].get<double>();
    im = j[1].get<double>();
  } else {
    throw ParseError("scalar must be a number or [re, im]");
  }
  if constexpr (is_complex_v<T>) {
    return {re, im};
  } else {
    if (im != 0.0) throw ParseError("nonzero imaginary part in a real-field point");
    return re;
  }
}

template <FieldScalar T>
json scalar_to_json(const T& x) {
  return json::array({real_part(x), imag_part(x)});
}

template <FieldScalar T>
Matrix<T> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const char* what) {
  if (!j.is_array() || j.size() != rows) throw InvalidInput(std::string(what) + " has the wrong number of rows");
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw InvalidInput(std::string(what) + " has the wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json<T>(j[i][c]);
  }
  return m;
}

template <FieldScalar T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <FieldScalar T>
ReprPoint<T> point_body_from_json(const json& j, std::size_t n, std::size_t k) {
  const Matrix<T> a = matrix_from_json<T>(j.at("A"), n, n, "A");
  const double scale = std::max(1.0, max_abs(a));
  if (max_abs(a - a.adjoint()) > kAlgebraicTol * scale) throw InvalidInput("A is not self-adjoint");
  return ReprPoint<T>(Coset<T>(Hermitian<T>(a)), matrix_from_json<T>(j.at("B"), n, k, "B"));
}

}  // namespace detail

/**
 * Reads a point document:
 *   {"field": "R"|"C", "n": int, "k": int, "A": n x n, "B": n x k}
 * with entries written as [re, im] or bare reals. A is any representative of
 * its coset. Throws ParseError on schema errors and InvalidInput on shape errors.
 */
inline AnyPoint point_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("point must be a JSON object");
    const FieldTag field = parse_field(j.at("field").get<std::string>());
    const auto n_raw = j.at("n").get<long long>();
    const auto k_raw = j.at("k").get<long long>();
    if (n_raw < 0) throw InvalidInput("n must be nonnegative");
    if (k_raw != 1 && k_raw != 2) throw InvalidInput("k must be 1 or 2");
    const auto n = static_cast<std::size_t>(n_raw);
    const auto k = static_cast<std::size_t>(k_raw);
    if (n + k < 2) throw InvalidInput("dimension must satisfy n >= 2 - k");
    if (field == FieldTag::Real) return detail::point_body_from_json<double>(j, n, k);
    return detail::point_body_from_json<Complex>(j, n, k);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

inline AnyPoint point_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return point_from_json(j);
}

template <FieldScalar T>
json point_to_json(const ReprPoint<T>& p) {
  json j;
  j["field"] = std::string(to_string(field_of<T>));
  j["n"] = p.n;
  j["k"] = p.k;
  j["A"] = detail::matrix_to_json(p.cosetA.rep().matrix());
  j["B"] = detail::matrix_to_json(p.B);
  return j;
}

inline json point_to_json(const AnyPoint& p) {
  return std::visit([](const auto& q) { return point_to_json(q); }, p);
}

/// {"v": [...], "nu": [re, im]} with "nu" omitted when absent. Field order is fixed.
inline json quotient_to_json(const QuotientValue& q) {
  json j;
  j["v"] = q.v;
  if (q.nu) j["nu"] = json::array({q.nu->real(), q.nu->imag()});
  return j;
}

inline QuotientValue quotient_from_json(const json& j) {
  try {
    QuotientValue q;
    q.v = j.at("v").get<std::vector<double>>();
    if (j.contains("nu")) q.nu = detail::scalar_from_json<Complex>(j.at("nu"));
    return q;
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

template <FieldScalar T>
json group_to_json(const GroupElement<T>& g) {
  json j;
  j["field"] = std::string(to_string(field_of<T>));
  j["n"] = g.dim();
  j["C"] = detail::matrix_to_json(g.C);
  j["det"] = detail::scalar_to_json(g.detC);
  return j;
}

template <FieldScalar T>
GroupElement<T> group_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    return GroupElement<T>::from_matrix(detail::matrix_from_json<T>(j.at("C"), n, n, "C"));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace orbitq
