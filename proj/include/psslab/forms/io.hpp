#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "psslab/forms/forms.hpp"

namespace psslab::forms {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A triad or a matrix pair read from a definition document. Leaves are
/// expression strings.
struct FormDocument {
  std::string name;
  std::vector<std::string> parameters;
  std::variant<Triad, MatrixOneForm> body;

  bool is_triad() const { return std::holds_alternative<Triad>(body); }
  const Triad& triad() const { return std::get<Triad>(body); }
  const MatrixOneForm& matrix() const { return std::get<MatrixOneForm>(body); }
};

/// Throws FormatError for missing keys and sym::ParseError for bad leaves.
FormDocument form_from_json(const nlohmann::json& j);
nlohmann::json form_to_json(const FormDocument& doc);

FormDocument read_form_file(const std::filesystem::path& path);
void write_form_file(const std::filesystem::path& path, const FormDocument& doc);

nlohmann::json to_json(const OneForm& w);
nlohmann::json to_json(const ExprMatrix& m);

}  // namespace psslab::forms
