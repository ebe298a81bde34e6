#include "incparse/incremental.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <map>
#include <optional>

namespace incparse {

Modification Modification::insertion(int pos, std::vector<std::string> toks) {
  Modification m;
  m.kind = EditKind::Insert;
  m.pos = pos;
  m.count = static_cast<int>(toks.size());
  m.tokens = std::move(toks);
  return m;
}

Modification Modification::deletion(int pos, int count) {
  Modification m;
  m.kind = EditKind::Delete;
  m.pos = pos;
  m.count = count;
  return m;
}

Configuration make_configuration(const Grammar& g, std::vector<std::string> tokens,
                                 Strategy strategy, const ParseOptions& opts) {
  Configuration cfg;
  cfg.strategy = strategy;
  BatchResult batch = batch_parse(g, tokens, strategy, opts);
  cfg.tokens = std::move(tokens);
  cfg.chart = std::move(batch.chart);
  cfg.deps = std::move(batch.deps);
  return cfg;
}

namespace {

struct PrepareOutcome {
  EdgeSet sleeping;  // disturbed, non-condemned, renumbered coordinates
  std::unordered_map<Edge, Edge, EdgeHash> orig;  // sleeping edge -> pre-edit value
  std::vector<Edge> condemned;                    // pre-edit coordinates
  std::vector<Edge> merged_away;  // pre-edit edges that renumbering merged into another edge
  uint64_t renumbered = 0;
  VertexMapping mapping;
};

void validate_modification(const Configuration& cfg, const Modification& mod) {
  int n = static_cast<int>(cfg.tokens.size());
  if (mod.count < 1) throw InvalidModification("modification must touch at least one token");
  if (mod.kind == EditKind::Insert) {
    if (static_cast<int>(mod.tokens.size()) != mod.count)
      throw InvalidModification("insertion token count mismatch");
    if (mod.pos < 1 || mod.pos > n + 1)
      throw InvalidModification("insert position " + std::to_string(mod.pos) + " out of range 1.." +
                                std::to_string(n + 1));
  } else {
    if (mod.pos < 1 || mod.pos + mod.count - 1 > n)
      throw InvalidModification("delete range " + std::to_string(mod.pos) + ".." +
                                std::to_string(mod.pos + mod.count - 1) + " out of range 1.." +
                                std::to_string(n));
  }
}

/// Whether the group is still a valid derivation of e: all edge sources
/// present and the derivation geometry unbroken (renumbering can pull the
/// two parents of a combination apart across an insertion point). Token
/// refs attached for spanning edges are not derivational and are ignored
/// except on lexical edges.
bool group_derives(const Grammar& g, Strategy strategy, const Edge& e, const SourceGroup& group,
                   const Chart& chart, int token_count) {
  std::vector<Edge> parents;
  bool init = false;
  bool token_here = false;
  for (const Source& s : group) {
    switch (s.kind) {
      case Source::Kind::Edge:
        if (!chart.contains(s.edge)) return false;
        parents.push_back(s.edge);
        break;
      case Source::Kind::Init:
        init = true;
        break;
      case Source::Kind::Token:
        if (s.token_pos == e.start && s.token_pos >= 1 && s.token_pos <= token_count)
          token_here = true;
        break;
    }
  }
  if (g.rule(e.rule).lexical)
    return parents.empty() && !init && token_here && e.end == e.start + 1;
  if (e.is_loop() && e.dot == 0) {
    if (init)
      return parents.empty() && e.start == 1 && g.rule(e.rule).lhs == g.start() &&
             strategy == Strategy::TopDown;
    if (parents.size() != 1) return false;
    const Edge& t = parents.front();
    if (strategy == Strategy::BottomUp)
      return edge_inactive(g, t) && t.start == e.start &&
             g.rule(t.rule).lhs == g.rule(e.rule).rhs.front();
    return edge_active(g, t) && t.end == e.start &&
           g.needed_category(t.rule, t.dot) == g.rule(e.rule).lhs;
  }
  // Combination: an active parent and an adjacent inactive parent that
  // together yield exactly e.
  if (parents.size() != 2 || init) return false;
  for (int k = 0; k < 2; ++k) {
    const Edge& a = parents[static_cast<size_t>(k)];
    const Edge& b = parents[static_cast<size_t>(1 - k)];
    if (a.rule == e.rule && a.dot == e.dot - 1 && a.start == e.start && edge_active(g, a) &&
        edge_inactive(g, b) && a.end == b.start && b.end == e.end &&
        g.rule(b.rule).lhs == g.needed_category(a.rule, a.dot))
      return true;
  }
  return false;
}

/// Least fixpoint of: an edge is disturbed iff each of its groups contains
/// a modified token, a disturbed edge, or (with check_geometry, after
/// renumbering) no longer derives the edge. One intact derivation keeps an
/// edge awake; in particular a redundant prediction group referencing
/// disturbed material never disturbs a loop on its own.
std::set<Edge> compute_disturbed(const Grammar& g, Strategy strategy, const Chart& chart,
                                 const DependencyRelation& deps, const std::set<int>& bad_tokens,
                                 bool check_geometry, int token_count) {
  std::set<Edge> disturbed;
  std::vector<Edge> all = chart.sorted_edges();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : all) {
      if (disturbed.count(e) != 0) continue;
      bool all_hit = true;
      for (const auto& grp : deps.groups(e)) {
        bool hit = false;
        for (const Source& s : grp) {
          if (s.kind == Source::Kind::Token && bad_tokens.count(s.token_pos) != 0) hit = true;
          if (s.kind == Source::Kind::Edge && disturbed.count(s.edge) != 0) hit = true;
        }
        if (!hit && check_geometry && !group_derives(g, strategy, e, grp, chart, token_count))
          hit = true;
        if (!hit) {
          all_hit = false;
          break;
        }
      }
      if (all_hit) {
        disturbed.insert(e);
        changed = true;
      }
    }
  }
  return disturbed;
}

/// True if the looping edge was proposed from an outgoing, non-looping
/// edge (bottom-up predictions); such loops move with the material to
/// their right when tokens are inserted at their vertex.
bool loop_has_outgoing_source(const DependencyRelation& deps, const Edge& loop) {
  for (const auto& grp : deps.groups(loop))
    for (const Source& s : grp)
      if (s.kind == Source::Kind::Edge && !s.edge.is_loop() && s.edge.start == loop.start)
        return true;
  return false;
}

void prepare_insertion(const Grammar& g, Configuration& cfg, const Modification& mod,
                       PrepareOutcome& out) {
  const Vertex i = mod.pos;
  const int m = mod.count;
  out.mapping = VertexMapping{i, m, static_cast<int>(cfg.tokens.size()) + m + 1};

  // Which loops at the modification vertex relocate; decided before any
  // renumbering since the sources are recorded in pre-edit coordinates.
  EdgeSet relocating;
  for (const Edge& e : cfg.chart.edges())
    if (e.is_loop() && e.start == i && loop_has_outgoing_source(cfg.deps, e))
      relocating.insert(e);

  auto renum = [&](const Edge& e) -> Edge {
    if (e.is_loop() && e.start == i)
      return relocating.count(e) ? Edge{i + m, i + m, e.rule, e.dot} : e;
    Vertex s = (e.start >= i && e.end != i) ? e.start + m : e.start;
    Vertex t = e.end > i ? e.end + m : e.end;
    return {s, t, e.rule, e.dot};
  };

  std::unordered_map<Edge, Edge, EdgeHash> edge_map;
  std::unordered_map<Edge, Edge, EdgeHash> reverse;
  Chart next(cfg.chart.vertex_count() + m);
  for (const Edge& e : cfg.chart.edges()) {
    Edge ne = renum(e);
    edge_map.emplace(e, ne);
    reverse.emplace(ne, e);
    if (ne != e) ++out.renumbered;
    next.insert(g, ne);
  }
  assert(next.size() == cfg.chart.size());  // insertion renumbering is injective
  cfg.chart = std::move(next);

  std::unordered_map<int, int> token_map;
  for (int p = i; p <= static_cast<int>(cfg.tokens.size()); ++p) token_map[p] = p + m;
  cfg.deps.renumber(edge_map, token_map);
  cfg.tokens.insert(cfg.tokens.begin() + (i - 1), mod.tokens.begin(), mod.tokens.end());

  // Every edge spanning the insertion point now also rests on the first
  // inserted token.
  for (const Edge& e : cfg.chart.sorted_edges())
    if (e.start <= i && e.end > i) cfg.deps.add_token_dependency(e, i);

  // The geometry check matters here: renumbering can break a derivation
  // without touching a token, e.g. under top-down prediction an edge
  // outgoing from v_i moves right while its looping parent stays left.
  std::set<int> bad_tokens{i};
  for (int p = i + 1; p < i + m; ++p) bad_tokens.insert(p);
  std::set<Edge> disturbed =
      compute_disturbed(g, cfg.strategy, cfg.chart, cfg.deps, bad_tokens, true,
                        static_cast<int>(cfg.tokens.size()));
  for (const Edge& e : disturbed) {
    out.sleeping.insert(e);
    auto it = reverse.find(e);
    out.orig.emplace(e, it == reverse.end() ? e : it->second);
  }
}

void prepare_deletion(const Grammar& g, Configuration& cfg, const Modification& mod,
                      PrepareOutcome& out) {
  const Vertex i = mod.pos;
  const int m = mod.count;
  out.mapping = VertexMapping{i, m, cfg.chart.vertex_count()};

  // Disturbance is computed from the deleted tokens before anything moves;
  // geometry is still intact at this point.
  std::set<int> bad_tokens;
  for (int p = i; p < i + m; ++p) bad_tokens.insert(p);
  std::set<Edge> disturbed =
      compute_disturbed(g, cfg.strategy, cfg.chart, cfg.deps, bad_tokens, false,
                        static_cast<int>(cfg.tokens.size()));

  // Condemned: anchored inside the deleted region, meaningless after
  // renumbering and excluded from everything downstream.
  auto is_condemned = [&](const Edge& e) {
    if ((e.start > i && e.start < i + m) || (e.end > i && e.end < i + m)) return true;
    const Rule& r = g.rule(e.rule);
    if (r.lexical && e.start >= i && e.start < i + m) return true;
    if (!e.is_loop() && e.start >= i && e.end <= i + m) return true;
    return false;
  };
  for (const Edge& e : disturbed)
    if (is_condemned(e)) out.condemned.push_back(e);
  for (const Edge& e : out.condemned) {
    disturbed.erase(e);
    cfg.chart.erase(g, e);
    cfg.deps.retract_edge(e);
  }

  std::unordered_map<int, int> token_map;
  for (int p = i; p < i + m; ++p) token_map[p] = -p;  // gone; keeps refs distinct and dead
  for (int p = i + m; p <= static_cast<int>(cfg.tokens.size()); ++p) token_map[p] = p - m;
  cfg.tokens.erase(cfg.tokens.begin() + (i - 1), cfg.tokens.begin() + (i - 1 + m));

  auto renum = [&](const Edge& e) -> Edge {
    Vertex s = e.start > i ? e.start - m : e.start;
    Vertex t = e.end > i ? e.end - m : e.end;
    return {s, t, e.rule, e.dot};
  };

  // Vertices i and i+m fall together, so pairs of edges can merge; the
  // pre-edit edge the mapping associates with the merged value stays
  // covered, every other preimage is genuinely removed.
  std::unordered_map<Edge, Edge, EdgeHash> edge_map;
  std::map<Edge, std::vector<Edge>> preimages;
  for (const Edge& e : cfg.chart.edges()) {
    Edge ne = renum(e);
    edge_map.emplace(e, ne);
    preimages[ne].push_back(e);
    if (ne != e) ++out.renumbered;
  }
  Chart next(cfg.chart.vertex_count() - m);
  for (auto& [img, pres] : preimages) {
    next.insert(g, img);
    Edge covered = translate_edge_to_larger(out.mapping, img, cfg.strategy);
    bool awake = false;
    for (const Edge& p : pres)
      if (disturbed.count(p) == 0) awake = true;
    std::sort(pres.begin(), pres.end());
    Edge kept = pres.front();
    for (const Edge& p : pres)
      if (p == covered) kept = p;
    for (const Edge& p : pres)
      if (p != kept) out.merged_away.push_back(p);
    if (!awake) {
      out.sleeping.insert(img);
      out.orig.emplace(img, kept);
    }
  }
  cfg.chart = std::move(next);
  cfg.deps.renumber(edge_map, token_map);
}

/// One-step derivation of e from the current chart and text, independent
/// of what D recorded (recorded sources can be stale: a re-created active
/// never runs prediction, so loops never learn it as a source). Returns
/// the supporting group if one exists.
std::optional<SourceGroup> derive_group(const Grammar& g, Strategy strategy, const Edge& e,
                                        const Chart& chart,
                                        const std::vector<std::string>& tokens) {
  const Rule& r = g.rule(e.rule);
  if (r.lexical) {
    if (e.end != e.start + 1 || e.start < 1 || e.start > static_cast<int>(tokens.size()))
      return std::nullopt;
    for (RuleId lex : g.lexical_rules(tokens[static_cast<size_t>(e.start - 1)]))
      if (lex == e.rule) return SourceGroup{Source::token(e.start)};
    return std::nullopt;
  }
  if (e.is_loop() && e.dot == 0) {
    if (strategy == Strategy::BottomUp) {
      for (const Edge& b : chart.inactives_starting_at(g, e.start))
        if (g.rule(b.rule).lhs == r.rhs.front()) return SourceGroup{Source::from_edge(b)};
      return std::nullopt;
    }
    if (e.start == 1 && r.lhs == g.start()) return SourceGroup{Source::init()};
    for (const Edge& a : chart.actives_ending_at(g, e.start))
      if (a != e && g.needed_category(a.rule, a.dot) == r.lhs)
        return SourceGroup{Source::from_edge(a)};
    return std::nullopt;
  }
  if (e.dot < 1) return std::nullopt;
  CategoryId needed = g.needed_category(e.rule, e.dot - 1);
  for (Vertex k = e.start; k <= e.end; ++k) {
    Edge a{e.start, k, e.rule, e.dot - 1};
    if (!chart.contains(a)) continue;
    for (const Edge& b : chart.inactives_starting_at(g, k))
      if (b.end == e.end && g.rule(b.rule).lhs == needed)
        return SourceGroup{Source::from_edge(a), Source::from_edge(b)};
  }
  return std::nullopt;
}

/// Removes the edges still sleeping, then drops every stale derivation
/// group left on kept edges (groups referencing removed material or pulled
/// apart geometrically by renumbering).
void discard_sleeping(const Grammar& g, Configuration& cfg, PrepareOutcome& prep,
                      const std::vector<Edge>& rescued, EditResult& res) {
  int token_count = static_cast<int>(cfg.tokens.size());
  std::vector<Edge> survivors = rescued;
  std::set<Edge> referrers;
  std::vector<Edge> asleep(prep.sleeping.begin(), prep.sleeping.end());
  std::sort(asleep.begin(), asleep.end());
  for (const Edge& e : asleep) {
    auto it = prep.orig.find(e);
    res.removed_old_coords.push_back(it == prep.orig.end() ? e : it->second);
    ++res.metrics.edges_removed;
    const std::set<Edge>& dep = cfg.deps.dependants_of_edge(e);
    referrers.insert(dep.begin(), dep.end());
    cfg.deps.retract_edge(e);
  }
  prep.sleeping.clear();

  for (const Edge& e : referrers)
    if (cfg.chart.contains(e)) survivors.push_back(e);
  std::sort(survivors.begin(), survivors.end());
  survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());

  for (const Edge& e : survivors) {
    std::vector<SourceGroup> gs = cfg.deps.groups(e);
    std::vector<SourceGroup> alive;
    for (auto& grp : gs)
      if (group_derives(g, cfg.strategy, e, grp, cfg.chart, token_count))
        alive.push_back(std::move(grp));
    if (alive.size() != gs.size()) {
      cfg.deps.erase_edge(e);
      for (auto& grp : alive) cfg.deps.record(e, std::move(grp));
    }
  }
}

EditResult apply_edit_impl(const Grammar& g, Configuration& config, const Modification& mod,
                           EngineKind engine, const ParseOptions& opts) {
  validate_modification(config, mod);
  auto t0 = std::chrono::steady_clock::now();

  // Staged: the live configuration is replaced only on success.
  Configuration cfg = config;
  EditResult res;
  PrepareOutcome prep;
  if (mod.kind == EditKind::Insert)
    prepare_insertion(g, cfg, mod, prep);
  else
    prepare_deletion(g, cfg, mod, prep);
  res.metrics.prepare_renumbered = prep.renumbered;
  for (const Edge& e : prep.condemned) {
    res.removed_old_coords.push_back(e);
    ++res.metrics.edges_removed;
  }
  for (const Edge& e : prep.merged_away) {
    res.removed_old_coords.push_back(e);
    ++res.metrics.edges_removed;
  }

  // Disturbed edges leave the chart; the bounded reparse keeps them as
  // sleeping re-creation candidates, the unbounded baseline treats them as
  // removed and re-derives from scratch.
  for (const Edge& e : prep.sleeping) cfg.chart.erase(g, e);

  EdgeSet recreated;
  EdgeSet new_edges;
  ReparseHooks hooks;
  hooks.new_edges = &new_edges;
  if (engine == EngineKind::Bounded) {
    hooks.sleeping = &prep.sleeping;
    hooks.recreated = &recreated;
    if (mod.kind == EditKind::Delete) hooks.merge_vertex = mod.pos;
  }
  Agenda agenda(opts.order, opts.agenda_seed);
  Engine eng(g, cfg.strategy, cfg.chart, cfg.deps, agenda, opts, hooks);
  if (mod.kind == EditKind::Insert) {
    for (int p = mod.pos; p < mod.pos + mod.count; ++p)
      agenda.push(ScanTask{cfg.tokens[static_cast<size_t>(p - 1)], p});
    eng.seed_combines_at(mod.pos);
    eng.seed_combines_at(mod.pos + mod.count);
  } else {
    eng.seed_combines_at(mod.pos);
  }
  eng.run();

  // Sleeping edges the surviving chart still supports re-enter it: rescued
  // for free under the bounded algorithm (no propagation beyond the two
  // genuinely new kinds of adjacency), re-derived at full cost — removal,
  // addition, follow-up tasks — under the baseline. Either way a revival
  // can expose further derivations, so this runs to a joint fixpoint with
  // the reparse.
  std::vector<Edge> revived;
  while (true) {
    bool progress = false;
    std::vector<Edge> snapshot(prep.sleeping.begin(), prep.sleeping.end());
    std::sort(snapshot.begin(), snapshot.end());
    for (const Edge& e : snapshot) {
      if (engine == EngineKind::Unbounded && cfg.chart.contains(e)) {
        // The reparse re-derived it on its own; the old edge still counts
        // as removed.
        auto it = prep.orig.find(e);
        res.removed_old_coords.push_back(it == prep.orig.end() ? e : it->second);
        ++res.metrics.edges_removed;
        prep.sleeping.erase(e);
        revived.push_back(e);
        progress = true;
        continue;
      }
      auto grp = derive_group(g, cfg.strategy, e, cfg.chart, cfg.tokens);
      if (!grp) continue;
      prep.sleeping.erase(e);
      revived.push_back(e);
      progress = true;
      if (engine == EngineKind::Bounded) {
        cfg.chart.insert(g, e);
        cfg.deps.record(e, std::move(*grp));
        eng.reseed(e);
      } else {
        auto it = prep.orig.find(e);
        res.removed_old_coords.push_back(it == prep.orig.end() ? e : it->second);
        ++res.metrics.edges_removed;
        eng.propose(e, std::move(*grp));
      }
    }
    if (!progress) break;
    eng.run();
  }
  discard_sleeping(g, cfg, prep, revived, res);
  res.metrics.tasks_executed = eng.counters().tasks_executed;
  res.metrics.edges_added = eng.counters().edges_added;
  res.metrics.edges_recreated = eng.counters().edges_recreated;

  // A re-created edge replaces its pre-edit partner: one addition plus one
  // removal. When the partner is not actually the edge's image under the
  // vertex mapping, the pair is a genuine removal plus a genuine addition
  // instead.
  for (const Edge& e : recreated) {
    ++res.metrics.edges_removed;
    Edge o = prep.orig.at(e);
    const Edge& smaller = mod.kind == EditKind::Delete ? e : o;
    const Edge& larger = mod.kind == EditKind::Delete ? o : e;
    if (translate_edge_to_larger(prep.mapping, smaller, cfg.strategy) == larger)
      res.recreated.push_back(e);
    else
      res.removed_old_coords.push_back(o);
  }
  res.added_new_coords.assign(new_edges.begin(), new_edges.end());
  for (const Edge& e : recreated) res.added_new_coords.push_back(e);
  std::sort(res.added_new_coords.begin(), res.added_new_coords.end());
  std::sort(res.removed_old_coords.begin(), res.removed_old_coords.end());
  std::sort(res.recreated.begin(), res.recreated.end());

  res.metrics.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  config = std::move(cfg);  // commit
  return res;
}

}  // namespace

EditResult apply_edit(const Grammar& g, Configuration& config, const Modification& mod,
                      const ParseOptions& opts) {
  return apply_edit_impl(g, config, mod, EngineKind::Bounded, opts);
}

EditResult apply_edit_unbounded(const Grammar& g, Configuration& config, const Modification& mod,
                                const ParseOptions& opts) {
  return apply_edit_impl(g, config, mod, EngineKind::Unbounded, opts);
}

}  // namespace incparse
