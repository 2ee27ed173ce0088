#include "otfa/sequence_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "otfa/errors.hpp"

namespace otfa {

using nlohmann::json;

std::string sequence_to_json(const GridSequence& seq, int indent) {
  json j;
  j["shape"] = seq.shape().sizes();
  json values = json::array();
  for (const auto& v : seq.values()) values.push_back({v.real(), v.imag()});
  j["values"] = std::move(values);
  return j.dump(indent);
}

GridSequence sequence_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("values")) throw ParseError("sequence JSON needs a 'values' field");
    const auto& vals = j.at("values");
    if (!vals.is_array()) throw ParseError("'values' must be an array");
    std::vector<std::size_t> shape;
    if (j.contains("shape")) {
      shape = j.at("shape").get<std::vector<std::size_t>>();
    } else {
      shape = {vals.size()};
    }
    std::vector<cplx> data;
    data.reserve(vals.size());
    for (const auto& v : vals) {
      if (v.is_number()) {
        data.emplace_back(v.get<double>(), 0.0);
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        data.emplace_back(v[0].get<double>(), v[1].get<double>());
      } else {
        throw ParseError("sequence values must be numbers or [re, im] pairs");
      }
    }
    return GridSequence(GridShape(shape), std::move(data));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid sequence JSON: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

GridSequence read_sequence(const std::filesystem::path& path) {
  const auto text = read_text(path);
  try {
    return sequence_from_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_sequence(const std::filesystem::path& path, const GridSequence& seq) {
  write_text(path, sequence_to_json(seq) + "\n");
}

}  // namespace otfa
