#include "qcorr/state_io.hpp"

#include <cmath>
#include <fstream>

#include "qcorr/errors.hpp"

namespace qcorr::io {

using nlohmann::json;

namespace {

std::vector<cplx> read_entries(const json& doc) {
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError("entries: missing or not an array");
  }
  const auto& arr = doc["entries"];
  std::vector<cplx> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& e = arr[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("entries[" + std::to_string(k) + "]: expected [re, im] pair of numbers");
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ParseError("entries[" + std::to_string(k) + "]: non-finite value");
    }
    out.emplace_back(re, im);
  }
  return out;
}

SubsystemLayout read_layout(const json& doc) {
  if (!doc.contains("dims") || !doc["dims"].is_array()) {
    throw ParseError("dims: missing or not an array");
  }
  if (!doc.contains("labels") || !doc["labels"].is_array()) {
    throw ParseError("labels: missing or not an array");
  }
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < doc["dims"].size(); ++k) {
    const auto& d = doc["dims"][k];
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw ParseError("dims[" + std::to_string(k) + "]: expected a positive integer");
    }
    dims.push_back(d.get<std::size_t>());
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < doc["labels"].size(); ++k) {
    const auto& l = doc["labels"][k];
    if (!l.is_string()) throw ParseError("labels[" + std::to_string(k) + "]: expected a string");
    labels.push_back(l.get<std::string>());
  }
  return {std::move(dims), std::move(labels)};
}

std::string read_kind(const json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw ParseError("kind: missing or not a string");
  }
  return doc["kind"].get<std::string>();
}

CMatrix square_from(const std::vector<cplx>& flat, std::size_t n) {
  if (flat.size() != n * n) {
    throw InvariantError("dims", "expected " + std::to_string(n * n) + " entries, got " +
                                     std::to_string(flat.size()));
  }
  const auto m = static_cast<Eigen::Index>(n);
  CMatrix out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = flat[static_cast<std::size_t>(i * m + j)];
  }
  return out;
}

json layout_json(const SubsystemLayout& layout) {
  return {{"dims", layout.dims()}, {"labels", layout.labels()}};
}

json matrix_entries(const CMatrix& m) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return arr;
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

QuantumState state_from_json(const json& doc) {
  const std::string kind = read_kind(doc);
  if (kind != "density" && kind != "pure") {
    throw ParseError("kind: expected \"density\" or \"pure\", got \"" + kind + "\"");
  }
  auto layout = read_layout(doc);
  const auto flat = read_entries(doc);
  if (kind == "pure") {
    if (flat.size() != layout.total_dim()) {
      throw InvariantError("dims", "expected " + std::to_string(layout.total_dim()) +
                                       " amplitudes, got " + std::to_string(flat.size()));
    }
    CVector v(static_cast<Eigen::Index>(flat.size()));
    for (std::size_t k = 0; k < flat.size(); ++k) v(static_cast<Eigen::Index>(k)) = flat[k];
    return PureState(std::move(v), std::move(layout));
  }
  const std::size_t n = layout.total_dim();
  return DensityMatrix(square_from(flat, n), std::move(layout));
}

QuantumState read_state_file(const std::filesystem::path& path) {
  return state_from_json(parse_file(path));
}

UnitaryMatrix unitary_from_json(const json& doc) {
  const std::string kind = read_kind(doc);
  if (kind != "unitary") throw ParseError("kind: expected \"unitary\", got \"" + kind + "\"");
  const auto flat = read_entries(doc);
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (n == 0 || n * n != flat.size()) {
    throw InvariantError("dims", "entry count " + std::to_string(flat.size()) +
                                     " is not a perfect square");
  }
  if (doc.contains("dims")) {
    std::size_t prod = 1;
    for (const auto& d : doc["dims"]) {
      if (!d.is_number_integer()) throw ParseError("dims: expected integers");
      prod *= d.get<std::size_t>();
    }
    if (prod != n) {
      throw InvariantError("dims", "dims product " + std::to_string(prod) +
                                       " does not match matrix dimension " + std::to_string(n));
    }
  }
  return UnitaryMatrix(square_from(flat, n));
}

UnitaryMatrix read_unitary_file(const std::filesystem::path& path) {
  return unitary_from_json(parse_file(path));
}

json to_json(const PureState& psi) {
  json doc = layout_json(psi.layout());
  doc["kind"] = "pure";
  json arr = json::array();
  for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) {
    arr.push_back({psi.amplitudes()(k).real(), psi.amplitudes()(k).imag()});
  }
  doc["entries"] = std::move(arr);
  return doc;
}

json to_json(const DensityMatrix& rho) {
  json doc = layout_json(rho.layout());
  doc["kind"] = "density";
  doc["entries"] = matrix_entries(rho.entries());
  return doc;
}

json to_json(const UnitaryMatrix& u) {
  json doc;
  doc["kind"] = "unitary";
  doc["dims"] = {u.dim()};
  doc["entries"] = matrix_entries(u.entries());
  return doc;
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace qcorr::io
