#pragma once

#include "latshape/quadlattice.hpp"

#include <json.hpp>

#include <fstream>

namespace latshape {

using Json = nlohmann::json;

inline Json to_json(const Integer &a) {
  if (a >= std::numeric_limits<long long>::min() && a <= std::numeric_limits<long long>::max()) return to_ll(a);
  return to_string(a);
}

// rationals as "num/den" strings, integers as plain numbers
inline Json to_json(const Rational &r) {
  if (is_integer(r)) return to_json(numerator(r));
  return to_string(r);
}

template <class T> Json to_json(const Matrix<T> &m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <class T> Json to_json(const std::vector<T> &v) {
  Json out = Json::array();
  for (auto &x : v) out.push_back(to_json(x));
  return out;
}

inline Integer integer_from_json(const Json &j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    Rational r = parse_rational(j.get<std::string>());
    if (!is_integer(r)) throw MathError("expected an integer, got " + j.get<std::string>());
    return numerator(r);
  }
  throw MathError("expected an integer");
}

inline IntMatrix int_matrix_from_json(const Json &j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw MathError("expected a nonempty matrix");
  std::size_t r = j.size(), c = j[0].size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw MathError("ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = integer_from_json(j[i][k]);
  }
  return m;
}

inline Json to_json(const QuadraticForm &Q) { return {{"n", Q.dim()}, {"gram", to_json(Q.gram())}}; }

inline QuadraticForm form_from_json(const Json &j) {
  if (!j.contains("gram")) throw MathError("form JSON needs a \"gram\" field");
  IntMatrix g = int_matrix_from_json(j.at("gram"));
  if (j.contains("n") && j.at("n").get<std::size_t>() != g.rows()) throw MathError("form JSON: n does not match gram");
  return QuadraticForm(g);
}

inline Json to_json(const Subspace &L) { return {{"basis", to_json(L.basis())}}; }

inline Subspace subspace_from_json(const Json &j, std::size_t n) {
  const Json &b = j.is_object() ? j.at("basis") : j;
  IntMatrix B = int_matrix_from_json(b);
  if (B.cols() != n) throw MathError("subspace basis has the wrong number of columns");
  return Subspace::span(B);
}

inline Json read_json_file(const std::string &path) {
  std::ifstream f(path);
  if (!f) throw MathError("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception &e) {
    throw MathError(path + ": " + e.what());
  }
}

// "sumsq:N" or "file:<path>"
inline QuadraticForm parse_form_spec(const std::string &spec) {
  if (spec.rfind("sumsq:", 0) == 0) {
    std::string num = spec.substr(6);
    std::size_t pos = 0;
    long n = -1;
    try {
      n = std::stol(num, &pos);
    } catch (...) {
    }
    if (n < 1 || pos != num.size()) throw MathError("bad form spec: " + spec);
    return QuadraticForm::sum_of_squares(static_cast<std::size_t>(n));
  }
  if (spec.rfind("file:", 0) == 0) return form_from_json(read_json_file(spec.substr(5)));
  throw MathError("form spec must be sumsq:N or file:<path>");
}

// a subspace argument is a JSON file path, or inline JSON such as [[1,2,0]] or {"basis": ...}
inline Subspace parse_subspace_arg(const std::string &arg, std::size_t n) {
  Json j;
  std::string s = arg;
  if (s.rfind("file:", 0) == 0) return subspace_from_json(read_json_file(s.substr(5)), n);
  try {
    j = Json::parse(s);
  } catch (const Json::exception &) {
    return subspace_from_json(read_json_file(s), n);
  }
  return subspace_from_json(j, n);
}

} // namespace latshape
