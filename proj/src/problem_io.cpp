#include "qef/problem_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qef {

namespace {

[[noreturn]] void bad_input(const std::string& path, const std::string& what) {
  fail(ErrorKind::input, path + ": " + what);
}

double number_at(const Json& v, const std::string& path) {
  if (!v.is_number()) bad_input(path, "expected a number");
  return v.get<double>();
}

Complex entry_at(const Json& v, const std::string& path, bool* complex_seen) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    if (complex_seen) *complex_seen = true;
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  bad_input(path, "expected a number or a [re, im] pair");
}

ComplexMatrix complex_matrix_at(const Json& v, const std::string& path, bool* complex_seen) {
  if (!v.is_array() || v.empty()) bad_input(path, "expected a nonempty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(v.size());
  Eigen::Index cols = -1;
  ComplexMatrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = v[static_cast<std::size_t>(i)];
    const std::string rpath = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.empty()) bad_input(rpath, "expected a nonempty row array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      bad_input(rpath, "ragged matrix rows");
    }
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = entry_at(row[static_cast<std::size_t>(j)],
                         rpath + "[" + std::to_string(j) + "]", complex_seen);
  }
  if (!m.allFinite()) bad_input(path, "non-finite entries");
  return m;
}

RealMatrix real_matrix_at(const Json& v, const std::string& path) {
  bool complex_seen = false;
  const ComplexMatrix m = complex_matrix_at(v, path, &complex_seen);
  if (complex_seen) bad_input(path, "complex entries not allowed here");
  return m.real();
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("problem file: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::input, "problem file: top level must be an object");

  ProblemFile p;
  for (const auto& [key, val] : j.items()) {
    if (key == "theta") {
      p.theta = real_matrix_at(val, "theta");
    } else if (key == "P") {
      p.P = real_matrix_at(val, "P");
    } else if (key == "Pi") {
      p.Pi = real_matrix_at(val, "Pi");
    } else if (key == "risk_theta") {
      p.risk_theta = number_at(val, "risk_theta");
    } else if (key == "A") {
      p.A = complex_matrix_at(val, "A", nullptr);
    } else if (key == "B") {
      p.B = complex_matrix_at(val, "B", nullptr);
    } else if (key == "Cs") {
      if (!val.is_array()) fail(ErrorKind::input, "Cs: expected an array of matrices");
      for (std::size_t k = 0; k < val.size(); ++k)
        p.Cs.push_back(complex_matrix_at(val[k], "Cs[" + std::to_string(k) + "]", nullptr));
    } else if (key == "weights") {
      if (!val.is_array()) fail(ErrorKind::input, "weights: expected an array");
      for (std::size_t k = 0; k < val.size(); ++k) {
        const Json& w = val[k];
        const std::string wpath = "weights[" + std::to_string(k) + "]";
        if (!w.is_object()) bad_input(wpath, "expected an object");
        WeightEntry e;
        for (const auto& [wk, wv] : w.items()) {
          if (wk == "C") e.C = real_matrix_at(wv, wpath + ".C");
          else if (wk == "D") e.D = real_matrix_at(wv, wpath + ".D");
          else if (wk == "sigma") e.sigma = real_matrix_at(wv, wpath + ".sigma");
          else if (wk == "theta_block") e.theta_block = real_matrix_at(wv, wpath + ".theta_block");
          else bad_input(wpath + "." + wk, "unknown field");
        }
        if (e.C && e.D) bad_input(wpath, "give either C or D, not both");
        if (!e.C && !e.D) bad_input(wpath, "missing weight matrix C or D");
        p.weights.push_back(std::move(e));
      }
    } else if (key == "sweep") {
      if (!val.is_object()) fail(ErrorKind::input, "sweep: expected an object");
      SweepSpec s;
      if (!val.contains("parameter") || !val["parameter"].is_string())
        fail(ErrorKind::input, "sweep.parameter: expected a string");
      s.parameter = val["parameter"].get<std::string>();
      if (s.parameter != "risk_theta")
        fail(ErrorKind::input, "sweep.parameter: only \"risk_theta\" is supported");
      if (!val.contains("grid") || !val["grid"].is_array() || val["grid"].empty())
        fail(ErrorKind::input, "sweep.grid: expected a nonempty array of numbers");
      for (std::size_t k = 0; k < val["grid"].size(); ++k)
        s.grid.push_back(number_at(val["grid"][k], "sweep.grid[" + std::to_string(k) + "]"));
      p.sweep = std::move(s);
    } else {
      fail(ErrorKind::input, key + ": unknown field");
    }
  }
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::input, path + ": cannot open problem file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json complex_matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json ProblemFile::echo() const {
  Json j = Json::object();
  if (theta) j["theta"] = real_matrix_to_json(*theta);
  if (P) j["P"] = real_matrix_to_json(*P);
  if (Pi) j["Pi"] = real_matrix_to_json(*Pi);
  j["risk_theta"] = risk_theta;
  if (A) j["A"] = complex_matrix_to_json(*A);
  if (B) j["B"] = complex_matrix_to_json(*B);
  if (!Cs.empty()) {
    Json arr = Json::array();
    for (const auto& c : Cs) arr.push_back(complex_matrix_to_json(c));
    j["Cs"] = std::move(arr);
  }
  if (!weights.empty()) {
    Json arr = Json::array();
    for (const auto& w : weights) {
      Json e = Json::object();
      if (w.C) e["C"] = real_matrix_to_json(*w.C);
      if (w.D) e["D"] = real_matrix_to_json(*w.D);
      if (w.sigma) e["sigma"] = real_matrix_to_json(*w.sigma);
      if (w.theta_block) e["theta_block"] = real_matrix_to_json(*w.theta_block);
      arr.push_back(std::move(e));
    }
    j["weights"] = std::move(arr);
  }
  if (sweep) {
    Json s = Json::object();
    s["parameter"] = sweep->parameter;
    Json grid = Json::array();
    for (double g : sweep->grid) grid.push_back(g);
    s["grid"] = std::move(grid);
    j["sweep"] = std::move(s);
  }
  return j;
}

std::string ProblemFile::digest() const { return fnv1a64_hex(dump_json_17(echo(), -1)); }

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += Json(s).dump();  // delegate string escaping
}

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        append_escaped(out, k);
        out += indent >= 0 ? ": " : ":";
        dump_rec(v, out, indent, depth + 1);
      }
      pad(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        dump_rec(v, out, indent, depth + 1);
      }
      pad(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json_17(const Json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

}  // namespace qef
