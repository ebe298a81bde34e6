#include "incparse/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace incparse {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

CategoryId Grammar::intern(std::string_view name) {
  auto it = by_name_.find(std::string(name));
  if (it != by_name_.end()) return it->second;
  CategoryId id = static_cast<CategoryId>(names_.size());
  names_.emplace_back(name);
  by_name_.emplace(std::string(name), id);
  return id;
}

std::optional<CategoryId> Grammar::find_category(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Grammar Grammar::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GrammarError("cannot open grammar file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

Grammar Grammar::from_text(std::string_view text) {
  Grammar g;
  enum class Section { None, Rules, Lexicon } section = Section::None;
  std::string start_name;
  // token -> ordered category list, merged per token across lines
  std::map<std::string, std::vector<CategoryId>> lex;
  std::set<std::pair<CategoryId, std::vector<CategoryId>>> seen_rules;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto err = [&](const std::string& msg) {
      throw GrammarError("line " + std::to_string(lineno) + ": " + msg);
    };

    if (line[0] == '%') {
      auto parts = split_ws(line);
      if (parts[0] == "%rules") {
        section = Section::Rules;
      } else if (parts[0] == "%lexicon") {
        section = Section::Lexicon;
      } else if (parts[0] == "%start") {
        if (parts.size() != 2) err("%start expects one category");
        start_name = parts[1];
      } else {
        err("unknown directive " + parts[0]);
      }
      continue;
    }

    if (section == Section::Rules) {
      auto arrow = line.find("->");
      if (arrow == std::string::npos) err("rule line needs '->'");
      std::string lhs = trim(line.substr(0, arrow));
      auto rhs_syms = split_ws(trim(line.substr(arrow + 2)));
      if (lhs.empty()) err("rule missing left-hand side");
      if (rhs_syms.empty()) err("empty production");
      Rule r;
      r.lhs = g.intern(lhs);
      for (auto& s : rhs_syms) r.rhs.push_back(g.intern(s));
      if (!seen_rules.insert({r.lhs, r.rhs}).second) {
        g.load_warnings_.push_back("line " + std::to_string(lineno) + ": duplicate rule " + line);
        continue;
      }
      r.id = static_cast<RuleId>(g.rules_.size());
      g.rules_.push_back(std::move(r));
      ++g.phrasal_count_;
    } else if (section == Section::Lexicon) {
      auto arrow = line.find("<-");
      if (arrow == std::string::npos) err("lexicon line needs '<-'");
      std::string token = trim(line.substr(0, arrow));
      if (token.empty()) err("lexicon entry missing token");
      std::string cats_part = trim(line.substr(arrow + 2));
      std::vector<std::string> cats;
      std::string cur;
      std::istringstream cs(cats_part);
      while (std::getline(cs, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) cats.push_back(cur);
      }
      if (cats.empty()) err("lexicon entry without categories");
      auto& entry = lex[token];
      for (auto& c : cats) {
        CategoryId id = g.intern(c);
        if (std::find(entry.begin(), entry.end(), id) != entry.end()) {
          g.load_warnings_.push_back("line " + std::to_string(lineno) + ": duplicate lexicon pair " +
                                     token + " <- " + c);
          continue;
        }
        entry.push_back(id);
      }
    } else {
      err("content before %rules/%lexicon section");
    }
  }

  if (g.phrasal_count_ == 0) throw GrammarError("no rules");
  if (start_name.empty()) {
    g.start_ = g.rules_.front().lhs;
  } else {
    g.start_ = g.intern(start_name);
  }

  // Lexical rules go after the phrasal ones, in token order.
  for (auto& [token, cats] : lex) {
    for (CategoryId c : cats) {
      Rule r;
      r.id = static_cast<RuleId>(g.rules_.size());
      r.lhs = c;
      r.token = token;
      r.lexical = true;
      g.lexicon_[token].push_back(r.id);
      g.rules_.push_back(std::move(r));
    }
  }

  g.index();
  return g;
}

void Grammar::index() {
  for (const Rule& r : rules_) {
    if (r.lexical) continue;
    by_left_corner_[r.rhs.front()].push_back(r.id);
    by_lhs_[r.lhs].push_back(r.id);
  }
}

const std::vector<RuleId>& Grammar::lexical_rules(const std::string& token) const {
  auto it = lexicon_.find(token);
  return it == lexicon_.end() ? no_rules_ : it->second;
}

const std::vector<RuleId>& Grammar::rules_with_left_corner(CategoryId c) const {
  auto it = by_left_corner_.find(c);
  return it == by_left_corner_.end() ? no_rules_ : it->second;
}

const std::vector<RuleId>& Grammar::rules_with_lhs(CategoryId c) const {
  auto it = by_lhs_.find(c);
  return it == by_lhs_.end() ? no_rules_ : it->second;
}

int Grammar::symbol_total() const {
  int n = 0;
  for (const Rule& r : rules_) n += r.rhs_size();
  return n;
}

int Grammar::dotted_rule_count() const {
  int n = 0;
  for (const Rule& r : rules_) n += r.rhs_size() + 1;
  return n;
}

CategoryId Grammar::needed_category(RuleId r, int dot) const {
  const Rule& rule_ = rule(r);
  if (rule_.lexical || dot >= static_cast<int>(rule_.rhs.size())) return kNoCategory;
  return rule_.rhs[static_cast<size_t>(dot)];
}

std::string Grammar::render_dotted(RuleId r, int dot) const {
  const Rule& rl = rule(r);
  std::string out = category_name(rl.lhs) + " ->";
  if (rl.lexical) {
    if (dot == 0) out += " .";
    out += " " + rl.token;
    if (dot == 1) out += " .";
    return out;
  }
  for (int k = 0; k <= static_cast<int>(rl.rhs.size()); ++k) {
    if (k == dot) out += " .";
    if (k < static_cast<int>(rl.rhs.size()))
      out += " " + category_name(rl.rhs[static_cast<size_t>(k)]);
  }
  return out;
}

ValidationReport Grammar::validate() const {
  ValidationReport report;
  report.warnings = load_warnings_;

  bool start_has_rule = false;
  for (const Rule& r : rules_)
    if (!r.lexical && r.lhs == start_) start_has_rule = true;
  if (!start_has_rule)
    report.issues.push_back({ValidationIssue::Kind::MissingStart,
                             "start category " + category_name(start_) + " has no rule"});

  // Unit-production cycles: edges lhs -> rhs[0] for |rhs| == 1.
  std::unordered_map<CategoryId, std::vector<CategoryId>> unit;
  for (const Rule& r : rules_)
    if (!r.lexical && r.rhs.size() == 1) unit[r.lhs].push_back(r.rhs[0]);
  std::unordered_map<CategoryId, int> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<CategoryId> stack;
  std::set<std::set<CategoryId>> cycles;
  std::function<void(CategoryId)> dfs = [&](CategoryId c) {
    state[c] = 1;
    stack.push_back(c);
    auto it = unit.find(c);
    if (it != unit.end()) {
      for (CategoryId nxt : it->second) {
        if (state[nxt] == 1) {
          std::set<CategoryId> cyc;
          for (auto rit = stack.rbegin(); rit != stack.rend(); ++rit) {
            cyc.insert(*rit);
            if (*rit == nxt) break;
          }
          cycles.insert(cyc);
        } else if (state[nxt] == 0) {
          dfs(nxt);
        }
      }
    }
    stack.pop_back();
    state[c] = 2;
  };
  for (auto& [c, _] : unit)
    if (state[c] == 0) dfs(c);
  for (auto& cyc : cycles) {
    std::string names;
    for (CategoryId c : cyc) names += (names.empty() ? "" : ", ") + category_name(c);
    report.issues.push_back({ValidationIssue::Kind::UnitCycle, "unit cycle {" + names + "}"});
  }

  // Connectivity: every rhs category should be producible. Warning only.
  std::set<CategoryId> producible;
  for (const Rule& r : rules_) producible.insert(r.lhs);
  for (const Rule& r : rules_) {
    if (r.lexical) continue;
    for (CategoryId c : r.rhs)
      if (!producible.count(c))
        report.warnings.push_back("category " + category_name(c) +
                                  " is neither derived by a rule nor assigned by the lexicon");
  }
  return report;
}

}  // namespace incparse
