#include "moplab/io.hpp"

#include <fstream>
#include <stdexcept>

namespace moplab {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    const json& entries = j.at("entries");
    if (rows < 0 || cols < 0 || entries.size() != static_cast<std::size_t>(rows * cols)) {
      throw InputError("matrix_from_json: entry count does not match rows*cols");
    }
    ComplexMatrix m(rows, cols);
    std::size_t k = 0;
    for (Index i = 0; i < rows; ++i) {
      for (Index c = 0; c < cols; ++c, ++k) {
        const json& e = entries[k];
        if (!e.is_array() || e.size() != 2) throw InputError("matrix_from_json: entries must be [re, im] pairs");
        m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("matrix_from_json: ") + e.what());
  }
}

json channel_to_json(const Channel& ch) {
  return {{"type", "channel"},
          {"d_in", ch.d_in()},
          {"d_out", ch.d_out()},
          {"cp", ch.is_cp()},
          {"tp", ch.is_tp()},
          {"hermitian", ch.is_hermitian_preserving()},
          {"choi", matrix_to_json(ch.choi())}};
}

Channel channel_from_json(const json& j) {
  try {
    if (j.contains("type") && j.at("type") == "kraus") return choi_from_kraus(kraus_from_json(j));
    return Channel(j.at("d_in").get<Index>(), j.at("d_out").get<Index>(), matrix_from_json(j.at("choi")));
  } catch (const json::exception& e) {
    throw InputError(std::string("channel_from_json: ") + e.what());
  }
}

json kraus_to_json(const KrausSet& ks) {
  json elements = json::array();
  for (const auto& a : ks.elements()) elements.push_back(matrix_to_json(a));
  return {{"type", "kraus"}, {"d_in", ks.d_in()}, {"d_out", ks.d_out()}, {"elements", std::move(elements)}};
}

KrausSet kraus_from_json(const json& j) {
  try {
    std::vector<ComplexMatrix> elements;
    for (const auto& e : j.at("elements")) elements.push_back(matrix_from_json(e));
    return KrausSet(std::move(elements));
  } catch (const json::exception& e) {
    throw InputError(std::string("kraus_from_json: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace moplab
