#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace incparse {

/// Interned grammar category. Categories are compared by identity within
/// one Grammar; the id indexes the grammar's symbol table.
using CategoryId = int32_t;
using RuleId = int32_t;

constexpr CategoryId kNoCategory = -1;

/// A production. Lexical rules (X -> token) live in the same table as
/// phrasal rules so that every dotted rule is addressed by (rule, dot).
struct Rule {
  RuleId id = -1;
  CategoryId lhs = kNoCategory;
  std::vector<CategoryId> rhs;  // empty for lexical rules
  std::string token;            // non-empty for lexical rules
  bool lexical = false;

  int rhs_size() const { return lexical ? 1 : static_cast<int>(rhs.size()); }
};

struct ValidationIssue {
  enum class Kind { UnitCycle, MissingStart, Unreachable };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::string> warnings;

  bool ok() const { return issues.empty(); }
};

/// Context-free grammar plus lexicon. Immutable once built; safe to share
/// across threads.
class Grammar {
 public:
  static Grammar from_file(const std::string& path);
  static Grammar from_text(std::string_view text);

  CategoryId start() const { return start_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(RuleId id) const { return rules_[static_cast<size_t>(id)]; }

  int phrasal_rule_count() const { return phrasal_count_; }
  int lexicon_token_count() const { return static_cast<int>(lexicon_.size()); }

  /// Sum of rhs lengths over all rules (the grammar constant |G|).
  int symbol_total() const;

  /// Number of dotted rules: sum of (|rhs| + 1) over all rules.
  int dotted_rule_count() const;

  const std::string& category_name(CategoryId c) const { return names_[static_cast<size_t>(c)]; }
  std::optional<CategoryId> find_category(std::string_view name) const;

  /// Lexical rule ids for a surface token; empty for unknown tokens.
  const std::vector<RuleId>& lexical_rules(const std::string& token) const;
  /// Phrasal rules whose rhs begins with `c` (bottom-up prediction).
  const std::vector<RuleId>& rules_with_left_corner(CategoryId c) const;
  /// Phrasal rules with the given lhs (top-down prediction).
  const std::vector<RuleId>& rules_with_lhs(CategoryId c) const;

  ValidationReport validate() const;
  const std::vector<std::string>& load_warnings() const { return load_warnings_; }

  /// Dotted-rule helpers.
  bool dot_final(RuleId r, int dot) const { return dot == rule(r).rhs_size(); }
  CategoryId needed_category(RuleId r, int dot) const;

  std::string render_dotted(RuleId r, int dot) const;

 private:
  CategoryId intern(std::string_view name);
  void index();

  std::vector<std::string> names_;
  std::unordered_map<std::string, CategoryId> by_name_;
  std::vector<Rule> rules_;
  int phrasal_count_ = 0;
  CategoryId start_ = kNoCategory;
  std::map<std::string, std::vector<RuleId>> lexicon_;
  std::unordered_map<CategoryId, std::vector<RuleId>> by_left_corner_;
  std::unordered_map<CategoryId, std::vector<RuleId>> by_lhs_;
  std::vector<std::string> load_warnings_;
  std::vector<RuleId> no_rules_;
};

/// Thrown on malformed grammar files; message carries the line number.
struct GrammarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace incparse
