#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace egg {

/// Built-in templates, compiled from `prompts/*.txt`.
const std::map<std::string, std::string>& default_prompt_templates();

/// Named prompt templates with `{KEY}` placeholders (upper-case letters and underscores).
///
/// Known names: `extract_scope`, `extract_entities`, `answer`, `judge`.
class PromptLibrary {
 public:
  PromptLibrary();

  /// Built-in templates, with any `<name>.txt` found in `dir` taking precedence.
  /// Throws Error(kIo) if `dir` is not a directory.
  static PromptLibrary from_directory(const std::filesystem::path& dir);

  /// Throws Error(kSchema) for an unknown template name.
  const std::string& get(std::string_view name) const;
  void set(std::string name, std::string text);

  /// Substitutes every placeholder. Throws Error(kSchema) if the template uses a
  /// placeholder missing from `vars`.
  std::string render(std::string_view name, const std::map<std::string, std::string>& vars) const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

/// Placeholder substitution on a raw template string; see PromptLibrary::render.
std::string render_template(std::string_view text, const std::map<std::string, std::string>& vars);

}  // namespace egg
