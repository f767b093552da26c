#include "psslab/forms/io.hpp"

#include <fstream>

#include "psslab/symcore/parse.hpp"

namespace psslab::forms {

using nlohmann::json;

namespace {

Expr leaf(const json& j, const std::string& where) {
  if (j.is_string()) return sym::parse(j.get<std::string>());
  if (j.is_number_integer()) return Expr(j.get<long>());
  throw FormatError(where + ": expected an expression string");
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing '" + key + "'");
  return j.at(key);
}

OneForm one_form(const json& j, const std::string& where) {
  return {leaf(field(j, "dx", where), where + ".dx"), leaf(field(j, "dt", where), where + ".dt")};
}

ExprMatrix matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw FormatError(where + ": expected a 2x2 array");
  ExprMatrix m;
  for (int i = 0; i < 2; ++i) {
    if (!j[i].is_array() || j[i].size() != 2) throw FormatError(where + ": expected a 2x2 array");
    for (int k = 0; k < 2; ++k)
      m[i][k] = leaf(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

}  // namespace

json to_json(const OneForm& w) { return {{"dx", w.dx.str()}, {"dt", w.dt.str()}}; }

json to_json(const ExprMatrix& m) {
  return json::array({json::array({m[0][0].str(), m[0][1].str()}), json::array({m[1][0].str(), m[1][1].str()})});
}

FormDocument form_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("form document must be an object");
  FormDocument doc;
  doc.name = j.value("name", "");
  if (j.contains("parameters")) {
    for (const auto& p : j.at("parameters")) {
      if (!p.is_string()) throw FormatError("parameters: expected names");
      doc.parameters.push_back(p.get<std::string>());
    }
  }
  if (j.contains("w1")) {
    doc.body = Triad{one_form(field(j, "w1", "w1"), "w1"), one_form(field(j, "w2", "w2"), "w2"),
                     one_form(field(j, "w3", "w3"), "w3")};
  } else if (j.contains("X")) {
    doc.body = MatrixOneForm{matrix(j.at("X"), "X"), matrix(field(j, "T", "T"), "T")};
  } else {
    throw FormatError("form document needs w1/w2/w3 or X/T");
  }
  return doc;
}

json form_to_json(const FormDocument& doc) {
  json j;
  j["name"] = doc.name;
  j["parameters"] = doc.parameters;
  if (doc.is_triad()) {
    j["w1"] = to_json(doc.triad().w1);
    j["w2"] = to_json(doc.triad().w2);
    j["w3"] = to_json(doc.triad().w3);
  } else {
    j["X"] = to_json(doc.matrix().X);
    j["T"] = to_json(doc.matrix().T);
  }
  return j;
}

FormDocument read_form_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return form_from_json(j);
}

void write_form_file(const std::filesystem::path& path, const FormDocument& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << form_to_json(doc).dump(2) << '\n';
}

}  // namespace psslab::forms
