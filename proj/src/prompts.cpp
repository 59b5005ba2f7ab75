#include "egg/prompts.hpp"

#include <fstream>
#include <sstream>

#include "egg/error.hpp"

namespace egg {

namespace {

bool is_key_char(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }

}  // namespace

PromptLibrary::PromptLibrary() {
  for (const auto& [name, text] : default_prompt_templates()) templates_.emplace(name, text);
}

PromptLibrary PromptLibrary::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorCode::kIo, "prompt directory '" + dir.string() + "' does not exist");
  PromptLibrary lib;
  for (const auto& [name, text] : default_prompt_templates()) {
    const auto file = dir / (name + ".txt");
    if (!std::filesystem::exists(file)) continue;
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read '" + file.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    lib.set(name, ss.str());
  }
  return lib;
}

const std::string& PromptLibrary::get(std::string_view name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw Error(ErrorCode::kSchema, "unknown prompt template '" + std::string(name) + "'");
  return it->second;
}

void PromptLibrary::set(std::string name, std::string text) { templates_[std::move(name)] = std::move(text); }

std::string PromptLibrary::render(std::string_view name, const std::map<std::string, std::string>& vars) const {
  return render_template(get(name), vars);
}

std::string render_template(std::string_view text, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && is_key_char(text[j])) ++j;
      if (j > i + 1 && j < text.size() && text[j] == '}') {
        const std::string key(text.substr(i + 1, j - i - 1));
        auto it = vars.find(key);
        if (it == vars.end()) throw Error(ErrorCode::kSchema, "template placeholder {" + key + "} has no value");
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

}  // namespace egg
