#ifndef HENKIN_SIGNATURE_HPP
#define HENKIN_SIGNATURE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "henkin/error.hpp"

namespace henkin {

/// Cylindric (with equality) or quasi-polyadic (without equality).
enum class algebra_mode { ca, qpa };

inline const char* mode_name(algebra_mode m) {
  return m == algebra_mode::ca ? "with-equality" : "without-equality";
}

struct relation_symbol {
  std::string name;
  unsigned arity = 1;

  friend bool operator==(const relation_symbol&, const relation_symbol&) = default;
};

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c); });
}

/// Identifiers the formula grammar claims for itself.
inline bool is_reserved_word(const std::string& s) {
  if (s == "E" || s == "A" || s == "true" || s == "false") return true;
  return s.size() > 1 && s[0] == 'v' &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

class signature {
public:
  signature() = default;

  signature(std::string name, std::vector<relation_symbol> relations, bool equality)
      : name_(std::move(name)), relations_(std::move(relations)), equality_(equality) {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      const auto& r = relations_[i];
      if (!is_identifier(r.name) || is_reserved_word(r.name))
        throw error(errc::config_error, "invalid relation symbol '" + r.name + "'");
      if (r.arity == 0)
        throw error(errc::config_error, "relation '" + r.name + "' must have arity >= 1");
      for (std::size_t j = 0; j < i; ++j)
        if (relations_[j].name == r.name)
          throw error(errc::config_error, "duplicate relation symbol '" + r.name + "'");
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<relation_symbol>& relations() const { return relations_; }
  bool equality() const { return equality_; }
  algebra_mode mode() const { return equality_ ? algebra_mode::ca : algebra_mode::qpa; }

  std::optional<unsigned> arity(const std::string& rel) const {
    for (const auto& r : relations_)
      if (r.name == rel) return r.arity;
    return std::nullopt;
  }

  unsigned max_arity() const {
    unsigned m = 0;
    for (const auto& r : relations_) m = std::max(m, r.arity);
    return m;
  }

  friend bool operator==(const signature&, const signature&) = default;

private:
  std::string name_;
  std::vector<relation_symbol> relations_;
  bool equality_ = false;
};

}  // namespace henkin

#endif
