#include "mfgl_cli/spec_io.hpp"

#include <fstream>

namespace mfgl::cli {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("spec: missing field '") + key + "'");
  return j.at(key);
}

std::vector<double> vector_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = field(j, key);
  if (!v.is_array()) throw InvalidArgument(std::string("spec: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InvalidArgument(std::string("spec: '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = field(j, key);
  if (!v.is_number()) throw InvalidArgument(std::string("spec: '") + key + "' must be a number");
  return v.get<double>();
}

int int_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidArgument(std::string("spec: '") + key + "' must be an integer");
  return v.get<int>();
}

Matrix matrix_field(const nlohmann::json& j, const char* key) {
  const nlohmann::json& rows = field(j, key);
  if (!rows.is_array()) throw InvalidArgument(std::string("spec: '") + key + "' must be an array of rows");
  const int r = static_cast<int>(rows.size());
  Matrix m(r, r);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != rows.size()) {
      throw InvalidArgument(std::string("spec: '") + key + "' must be square");
    }
    for (int k = 0; k < r; ++k) {
      if (!rows[i][k].is_number()) throw InvalidArgument(std::string("spec: '") + key + "' must hold numbers");
      m(i, k) = rows[i][k].get<double>();
    }
  }
  return m;
}

}  // namespace

HamiltonianSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("spec: expected a JSON object");
  const nlohmann::json& type = field(j, "type");
  if (!type.is_string()) throw InvalidArgument("spec: 'type' must be a string");
  const std::string t = type.get<std::string>();
  HamiltonianSpec spec;
  if (t == "linear") {
    spec.payload = LinearSpec{vector_field(j, "theta")};
  } else if (t == "ising") {
    spec.payload = IsingSpec{matrix_field(j, "A"), vector_field(j, "mu")};
  } else if (t == "curie_weiss") {
    spec.payload = CurieWeissSpec{number_field(j, "beta"), int_field(j, "n")};
  } else if (t == "triangle_count") {
    spec.payload = TriangleCountSpec{number_field(j, "beta"), int_field(j, "N")};
  } else if (t == "sparse_fourier") {
    SparseFourierSpec s;
    s.n = int_field(j, "n");
    const nlohmann::json& terms = field(j, "terms");
    if (!terms.is_array()) throw InvalidArgument("spec: 'terms' must be an array");
    for (const auto& term : terms) {
      Term out;
      out.coeff = number_field(term, "coeff");
      const nlohmann::json& subset = field(term, "subset");
      if (!subset.is_array()) throw InvalidArgument("spec: 'subset' must be an index list");
      for (const auto& idx : subset) {
        if (!idx.is_number_integer()) throw InvalidArgument("spec: subset indices must be integers");
        const auto i = idx.get<std::int64_t>();
        if (i < 0 || i >= s.n) throw InvalidArgument("spec: subset index " + std::to_string(i) + " out of range");
        const SubsetMask bit = SubsetMask{1} << i;
        if (out.subset & bit) throw InvalidArgument("spec: repeated subset index " + std::to_string(i));
        out.subset |= bit;
      }
      s.terms.push_back(out);
    }
    spec.payload = std::move(s);
  } else if (t == "smoothed_cutoff") {
    SmoothedCutoffSpec s;
    s.inner = std::make_shared<const HamiltonianSpec>(spec_from_json(field(j, "inner")));
    s.t = number_field(j, "t");
    s.delta = number_field(j, "delta");
    spec.payload = std::move(s);
  } else {
    throw InvalidArgument("spec: unknown type '" + t + "'");
  }
  spec.validate();
  return spec;
}

nlohmann::ordered_json spec_to_json(const HamiltonianSpec& spec) {
  nlohmann::ordered_json j;
  j["type"] = spec.tag();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LinearSpec>) {
          j["theta"] = p.theta;
        } else if constexpr (std::is_same_v<P, IsingSpec>) {
          nlohmann::ordered_json rows = nlohmann::ordered_json::array();
          for (int i = 0; i < p.A.rows; ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < p.A.cols; ++k) row.push_back(p.A(i, k));
            rows.push_back(std::move(row));
          }
          j["A"] = std::move(rows);
          j["mu"] = p.mu;
        } else if constexpr (std::is_same_v<P, CurieWeissSpec>) {
          j["beta"] = p.beta;
          j["n"] = p.n;
        } else if constexpr (std::is_same_v<P, TriangleCountSpec>) {
          j["beta"] = p.beta;
          j["N"] = p.N;
        } else if constexpr (std::is_same_v<P, SparseFourierSpec>) {
          j["n"] = p.n;
          nlohmann::ordered_json terms = nlohmann::ordered_json::array();
          for (const Term& t : p.terms) {
            std::vector<int> subset;
            for (int i = 0; i < 64; ++i) {
              if (t.subset >> i & 1U) subset.push_back(i);
            }
            terms.push_back({{"subset", subset}, {"coeff", t.coeff}});
          }
          j["terms"] = std::move(terms);
        } else {
          j["inner"] = spec_to_json(*p.inner);
          j["t"] = p.t;
          j["delta"] = p.delta;
        }
      },
      spec.payload);
  return j;
}

HamiltonianSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("spec: cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("spec: " + path.string() + ": " + e.what());
  }
  return spec_from_json(j);
}

}  // namespace mfgl::cli
