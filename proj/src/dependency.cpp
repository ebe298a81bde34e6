#include "incparse/dependency.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace incparse {

namespace {

void normalize(SourceGroup& g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
}

}  // namespace

void DependencyRelation::index_group(const Edge& edge, const SourceGroup& group) {
  for (const Source& s : group) {
    if (s.kind == Source::Kind::Edge)
      edge_dependants_[s.edge].insert(edge);
    else if (s.kind == Source::Kind::Token)
      token_dependants_[s.token_pos].insert(edge);
  }
}

void DependencyRelation::record(const Edge& edge, SourceGroup group) {
  normalize(group);
  // A self-proposal (a top-down loop predicting its own category) is not a
  // derivation; recording it would make the edge self-justifying.
  if (std::find(group.begin(), group.end(), Source::from_edge(edge)) != group.end()) return;
  auto& gs = sources_[edge];
  if (std::find(gs.begin(), gs.end(), group) != gs.end()) return;
  index_group(edge, group);
  gs.push_back(std::move(group));
}

void DependencyRelation::reset(const Edge& edge, SourceGroup group) {
  erase_edge(edge);
  record(edge, std::move(group));
}

void DependencyRelation::add_token_dependency(const Edge& edge, int token_pos) {
  auto it = sources_.find(edge);
  if (it == sources_.end()) return;
  Source tok = Source::token(token_pos);
  bool changed = false;
  for (auto& g : it->second) {
    if (std::find(g.begin(), g.end(), tok) == g.end()) {
      g.push_back(tok);
      normalize(g);
      changed = true;
    }
  }
  if (changed) token_dependants_[token_pos].insert(edge);
}

void DependencyRelation::erase_edge(const Edge& edge) {
  auto it = sources_.find(edge);
  if (it == sources_.end()) return;
  for (const auto& g : it->second)
    for (const Source& s : g) {
      if (s.kind == Source::Kind::Edge) {
        auto d = edge_dependants_.find(s.edge);
        if (d != edge_dependants_.end()) {
          d->second.erase(edge);
          if (d->second.empty()) edge_dependants_.erase(d);
        }
      } else if (s.kind == Source::Kind::Token) {
        auto d = token_dependants_.find(s.token_pos);
        if (d != token_dependants_.end()) {
          d->second.erase(edge);
          if (d->second.empty()) token_dependants_.erase(d);
        }
      }
    }
  sources_.erase(it);
}

void DependencyRelation::retract_edge(const Edge& edge) {
  // Permanent removal: derivations built on this edge are no longer valid,
  // so every group mentioning it is dropped from its dependants. (erase_edge
  // keeps them, which is what re-creation by value identity needs.)
  std::set<Edge> deps = dependants_of_edge(edge);
  Source ref = Source::from_edge(edge);
  for (const Edge& d : deps) {
    auto it = sources_.find(d);
    if (it == sources_.end()) continue;
    std::vector<SourceGroup> kept;
    for (auto& grp : it->second) {
      if (std::find(grp.begin(), grp.end(), ref) == grp.end())
        kept.push_back(std::move(grp));
    }
    std::vector<SourceGroup> gs = std::move(kept);
    erase_edge(d);
    for (auto& grp : gs) record(d, std::move(grp));
  }
  erase_edge(edge);
}

const std::vector<SourceGroup>& DependencyRelation::groups(const Edge& edge) const {
  static const std::vector<SourceGroup> empty;
  auto it = sources_.find(edge);
  return it == sources_.end() ? empty : it->second;
}

bool DependencyRelation::has_init_source(const Edge& edge) const {
  for (const auto& g : groups(edge))
    for (const Source& s : g)
      if (s.kind == Source::Kind::Init) return true;
  return false;
}

const std::set<Edge>& DependencyRelation::dependants_of_edge(const Edge& e) const {
  static const std::set<Edge> empty;
  auto it = edge_dependants_.find(e);
  return it == edge_dependants_.end() ? empty : it->second;
}

const std::set<Edge>& DependencyRelation::dependants_of_token(int pos) const {
  static const std::set<Edge> empty;
  auto it = token_dependants_.find(pos);
  return it == token_dependants_.end() ? empty : it->second;
}

std::set<Edge> DependencyRelation::transitive_dependants(const std::vector<Source>& seeds) const {
  std::set<Edge> out;
  std::deque<Edge> frontier;
  auto push = [&](const std::set<Edge>& es) {
    for (const Edge& e : es)
      if (out.insert(e).second) frontier.push_back(e);
  };
  for (const Source& s : seeds) {
    if (s.kind == Source::Kind::Token)
      push(dependants_of_token(s.token_pos));
    else if (s.kind == Source::Kind::Edge)
      push(dependants_of_edge(s.edge));
  }
  while (!frontier.empty()) {
    Edge e = frontier.front();
    frontier.pop_front();
    push(dependants_of_edge(e));
  }
  return out;
}

bool DependencyRelation::group_intact(const SourceGroup& group, const EdgeSet& alive) {
  for (const Source& s : group)
    if (s.kind == Source::Kind::Edge && alive.count(s.edge) == 0) return false;
  return true;
}

int DependencyRelation::max_groups_per_edge() const {
  size_t m = 0;
  for (const auto& [e, gs] : sources_) m = std::max(m, gs.size());
  return static_cast<int>(m);
}

int DependencyRelation::max_dependants_per_source() const {
  size_t m = 0;
  for (const auto& [e, d] : edge_dependants_) m = std::max(m, d.size());
  for (const auto& [p, d] : token_dependants_) m = std::max(m, d.size());
  return static_cast<int>(m);
}

bool DependencyRelation::inverse_consistent() const {
  DependencyRelation rebuilt;
  for (const auto& [e, gs] : sources_)
    for (const auto& g : gs) rebuilt.index_group(e, g);
  return rebuilt.edge_dependants_ == edge_dependants_ &&
         rebuilt.token_dependants_ == token_dependants_;
}

std::string DependencyRelation::dump(const Grammar& g) const {
  std::vector<Edge> edges;
  edges.reserve(sources_.size());
  for (const auto& [e, gs] : sources_) edges.push_back(e);
  std::sort(edges.begin(), edges.end());
  std::ostringstream out;
  for (const Edge& e : edges) {
    out << "edge " << render_edge(g, e) << " <=";
    auto gs = groups(e);
    std::vector<std::string> rendered;
    for (const auto& grp : gs) {
      std::string s = " group{";
      bool first = true;
      for (const Source& src : grp) {
        if (!first) s += ", ";
        first = false;
        switch (src.kind) {
          case Source::Kind::Token:
            s += "tok(" + std::to_string(src.token_pos) + ")";
            break;
          case Source::Kind::Edge:
            s += render_edge(g, src.edge);
            break;
          case Source::Kind::Init:
            s += "init";
            break;
        }
      }
      s += "}";
      rendered.push_back(std::move(s));
    }
    std::sort(rendered.begin(), rendered.end());
    for (size_t k = 0; k < rendered.size(); ++k) out << (k ? " |" : "") << rendered[k];
    out << "\n";
  }
  return out.str();
}

void DependencyRelation::renumber(const std::unordered_map<Edge, Edge, EdgeHash>& edge_map,
                                  const std::unordered_map<int, int>& token_map) {
  auto map_edge = [&](const Edge& e) {
    auto it = edge_map.find(e);
    return it == edge_map.end() ? e : it->second;
  };
  auto map_token = [&](int pos) {
    auto it = token_map.find(pos);
    return it == token_map.end() ? pos : it->second;
  };

  DependencyRelation next;
  for (const auto& [e, gs] : sources_) {
    Edge ne = map_edge(e);
    for (const auto& grp : gs) {
      SourceGroup ng;
      ng.reserve(grp.size());
      for (const Source& s : grp) {
        if (s.kind == Source::Kind::Edge)
          ng.push_back(Source::from_edge(map_edge(s.edge)));
        else if (s.kind == Source::Kind::Token)
          ng.push_back(Source::token(map_token(s.token_pos)));
        else
          ng.push_back(s);
      }
      next.record(ne, std::move(ng));
    }
  }
  *this = std::move(next);
}

}  // namespace incparse
