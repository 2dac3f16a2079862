#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qef/matrix_ops.hpp"

namespace qef {

using Json = nlohmann::ordered_json;

struct WeightEntry {
  std::optional<RealMatrix> C;
  std::optional<RealMatrix> D;
  std::optional<RealMatrix> sigma;
  std::optional<RealMatrix> theta_block;
};

struct SweepSpec {
  std::string parameter;  // only "risk_theta" is defined
  std::vector<double> grid;
};

// Parsed problem file; optional fields are demanded lazily per subcommand.
struct ProblemFile {
  std::optional<RealMatrix> theta;
  std::optional<RealMatrix> P;
  std::optional<RealMatrix> Pi;
  double risk_theta = 1.0;
  std::optional<ComplexMatrix> A;
  std::optional<ComplexMatrix> B;
  std::vector<ComplexMatrix> Cs;
  std::vector<WeightEntry> weights;
  std::optional<SweepSpec> sweep;

  Json echo() const;            // canonical re-serialization
  std::string digest() const;   // fnv1a64 of the canonical dump
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

Json real_matrix_to_json(const RealMatrix& m);
Json complex_matrix_to_json(const ComplexMatrix& m);

std::string fnv1a64_hex(const std::string& bytes);

// JSON dump with every floating value rendered at 17 significant digits.
std::string dump_json_17(const Json& j, int indent = 2);

}  // namespace qef
