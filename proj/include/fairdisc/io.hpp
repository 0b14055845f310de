#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "fairdisc/instance_gen.hpp"
#include "fairdisc/model.hpp"

namespace fairdisc {

// ordered_json keeps key order fixed, so emitted artifacts are
// byte-stable across runs.
using Json = nlohmann::ordered_json;

using AnyInstance = std::variant<Instance<double>, Instance<Rational>>;

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

inline void save_json(const std::string& path, const Json& j) { save_text(path, j.dump(2) + "\n"); }

namespace detail {

inline Rational rational_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw std::invalid_argument("utility entries must be numbers or 'p/q' strings");
}

inline double double_from_json(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw std::invalid_argument("matrix entries must be numbers or 'p/q' strings");
}

template <class T, class FromJson>
Matrix<T> matrix_from_entries(const Json& j, FromJson&& conv) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
    throw std::invalid_argument("matrix JSON needs rows, cols and entries");
  }
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const Json& e = j.at("entries");
  if (!e.is_array() || static_cast<int>(e.size()) != rows) {
    throw std::invalid_argument("matrix entries row count mismatch");
  }
  Matrix<T> M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = e.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw std::invalid_argument("matrix entries column count mismatch");
    }
    for (int jj = 0; jj < cols; ++jj) M.at(i, jj) = conv(row.at(jj));
  }
  return M;
}

}  // namespace detail

inline Json matrix_to_json(const RealMatrix& M) {
  Json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < M.cols(); ++jj) row.push_back(M.at(i, jj));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline Json matrix_to_json(const RationalMatrix& M) {
  Json j;
  j["rows"] = M.rows();
  j["cols"] = M.cols();
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < M.cols(); ++jj) row.push_back(format_rational(M.at(i, jj)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline RealMatrix real_matrix_from_json(const Json& j) {
  return detail::matrix_from_entries<double>(j, detail::double_from_json);
}

inline RationalMatrix rational_matrix_from_json(const Json& j) {
  return detail::matrix_from_entries<Rational>(j, detail::rational_from_json);
}

// CSV form: one header line "rows,cols", then the entries row by row.
inline std::string matrix_to_csv(const RealMatrix& M) {
  std::ostringstream out;
  out << M.rows() << ',' << M.cols() << '\n';
  out.precision(17);
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      if (j) out << ',';
      out << M.at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

inline RealMatrix matrix_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV matrix");
  int rows = 0, cols = 0;
  {
    char comma = 0;
    std::istringstream head(line);
    if (!(head >> rows >> comma >> cols) || comma != ',') {
      throw std::invalid_argument("CSV matrix header must be 'rows,cols'");
    }
  }
  RealMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("CSV matrix ended early");
    std::istringstream row(line);
    std::string cell;
    for (int j = 0; j < cols; ++j) {
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("CSV matrix row too short");
      M.at(i, j) = std::stod(cell);
    }
  }
  return M;
}

template <class T>
Json instance_to_json(const Instance<T>& inst) {
  Json j;
  j["k"] = inst.k;
  j["group_sizes"] = inst.group_sizes;
  j["m"] = inst.m;
  Json rows = Json::array();
  for (int a = 0; a < inst.n(); ++a) {
    Json row = Json::array();
    for (int l = 0; l < inst.m; ++l) {
      if constexpr (std::is_same_v<T, Rational>) {
        row.push_back(format_rational(inst.utilities.at(a, l)));
      } else {
        row.push_back(inst.utilities.at(a, l));
      }
    }
    rows.push_back(std::move(row));
  }
  j["utilities"] = std::move(rows);
  return j;
}

// Instances with any "p/q" string entry parse as exact rationals; purely
// numeric instances parse as double (verified with the 1e-9 policy).
inline AnyInstance instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("group_sizes") || !j.contains("m") ||
      !j.contains("utilities")) {
    throw std::invalid_argument("instance JSON needs k, group_sizes, m, utilities");
  }
  const int k = j.at("k").get<int>();
  const auto group_sizes = j.at("group_sizes").get<std::vector<int>>();
  const int m = j.at("m").get<int>();
  const Json& u = j.at("utilities");
  if (!u.is_array()) throw std::invalid_argument("utilities must be an array of rows");
  bool exact = false;
  for (const Json& row : u) {
    if (!row.is_array() || static_cast<int>(row.size()) != m) {
      throw std::invalid_argument("every utility row must have m entries");
    }
    for (const Json& v : row) {
      if (v.is_string()) exact = true;
    }
  }
  const int n = static_cast<int>(u.size());
  auto build = [&](auto tag) -> AnyInstance {
    using T = decltype(tag);
    Instance<T> inst;
    inst.k = k;
    inst.group_sizes = group_sizes;
    inst.m = m;
    inst.utilities = Matrix<T>(n, m);
    for (int a = 0; a < n; ++a) {
      for (int l = 0; l < m; ++l) {
        if constexpr (std::is_same_v<T, Rational>) {
          inst.utilities.at(a, l) = detail::rational_from_json(u.at(a).at(l));
        } else {
          inst.utilities.at(a, l) = detail::double_from_json(u.at(a).at(l));
        }
      }
    }
    inst.validate();
    return inst;
  };
  if (exact) return build(Rational());
  return build(double());
}

inline Json allocation_to_json(const Allocation& alloc) {
  Json j;
  j["assignment"] = alloc.assignment;
  return j;
}

inline Allocation allocation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("assignment")) {
    throw std::invalid_argument("allocation JSON needs an assignment array");
  }
  Allocation a;
  a.assignment = j.at("assignment").get<std::vector<int>>();
  return a;
}

inline Json report_to_json(const FairnessReport& r) {
  Json j;
  j["notion"] = to_string(r.notion);
  j["c"] = r.c;
  j["witness"] = Json{{"agent", {r.agent_group, r.agent_member}},
                      {"pair", {r.pair_first, r.pair_second}}};
  return j;
}

inline Json coloring_to_json(const KColoring& chi) { return Json(chi); }

inline KColoring coloring_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("coloring JSON must be an integer array");
  return j.get<KColoring>();
}

inline Json set_system_to_json(const SetSystem& s) {
  Json j;
  j["ground"] = s.ground;
  Json subsets = Json::array();
  for (const auto& sub : s.subsets) subsets.push_back(Json{sub[0], sub[1], sub[2], sub[3]});
  j["subsets"] = std::move(subsets);
  return j;
}

inline SetSystem set_system_from_json(const Json& j) {
  SetSystem s;
  s.ground = j.at("ground").get<int>();
  for (const Json& sub : j.at("subsets")) {
    if (!sub.is_array() || sub.size() != 4) {
      throw std::invalid_argument("every subset must list exactly 4 elements");
    }
    s.subsets.push_back({sub.at(0).get<int>(), sub.at(1).get<int>(), sub.at(2).get<int>(),
                         sub.at(3).get<int>()});
  }
  s.validate();
  return s;
}

inline Json gadget_bundle_to_json(const GadgetBundle& bundle, std::uint64_t seed) {
  Json j;
  j["kind"] = "setsplit-gadget";
  Json params;
  params["subsets"] = bundle.sets.size();
  params["ground"] = bundle.sets.ground;
  params["k"] = bundle.k;
  params["dprime"] = bundle.dprime;
  params["seed"] = seed;
  params["max_frequency"] = bundle.max_freq;
  params["column_bound"] = format_rational(bundle.column_bound);
  params["gamma"] = bundle.gamma;
  j["params"] = std::move(params);
  j["set_system"] = set_system_to_json(bundle.sets);
  Json edges = Json::array();
  for (const auto& [u, v] : bundle.edges) edges.push_back(Json{u, v});
  j["edges"] = std::move(edges);
  j["B"] = matrix_to_json(bundle.B);
  return j;
}

inline GadgetBundle gadget_bundle_from_json(const Json& j) {
  GadgetBundle bundle;
  bundle.sets = set_system_from_json(j.at("set_system"));
  const Json& params = j.at("params");
  bundle.k = params.at("k").get<int>();
  bundle.dprime = params.at("dprime").get<int>();
  bundle.max_freq = params.at("max_frequency").get<int>();
  bundle.column_bound = parse_rational(params.at("column_bound").get<std::string>());
  bundle.gamma = params.at("gamma").get<double>();
  for (const Json& e : j.at("edges")) bundle.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  bundle.B = rational_matrix_from_json(j.at("B"));
  const int E = bundle.B.rows();
  const int M = bundle.sets.ground;
  const int N = bundle.sets.size();
  if (static_cast<int>(bundle.edges.size()) != E ||
      bundle.B.cols() != M + (bundle.k - 2) * N) {
    throw std::invalid_argument("gadget bundle shapes are inconsistent");
  }
  bundle.C = RationalMatrix(E, M);
  bundle.D = RationalMatrix(E, N);
  for (int i = 0; i < E; ++i) {
    for (int l = 0; l < M; ++l) bundle.C.at(i, l) = bundle.B.at(i, l);
    bundle.D.at(i, bundle.edges[i].second) = 1;
  }
  return bundle;
}

}  // namespace fairdisc
