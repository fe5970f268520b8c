#include "edm/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace edm {

const char* to_string(FindingKind kind) {
    switch (kind) {
        case FindingKind::DanglingAntecedent: return "DanglingAntecedent";
        case FindingKind::DeadEndConsequent: return "DeadEndConsequent";
        case FindingKind::Inconsistency: return "Inconsistency";
        case FindingKind::Circularity: return "Circularity";
        case FindingKind::DuplicateRule: return "DuplicateRule";
        case FindingKind::SubsumedRule: return "SubsumedRule";
        case FindingKind::EmptyRuleBase: return "EmptyRuleBase";
    }
    return "?";
}

const char* to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Clean: return "clean";
        case Verdict::Warnings: return "warnings";
        case Verdict::Errors: return "errors";
    }
    return "?";
}

ReachabilityGraph reachability(const FuzzyPetriNet& net, const Marking& initial,
                               std::size_t max_states) {
    ReachabilityGraph graph;
    std::map<Marking, std::size_t> seen;
    std::deque<std::size_t> frontier;

    graph.nodes.push_back(initial);
    graph.root = 0;
    seen.emplace(initial, 0);
    frontier.push_back(0);

    while (!frontier.empty()) {
        std::size_t node = frontier.front();
        frontier.pop_front();
        for (auto& [trans, next] : fire_boolean(net, graph.nodes[node])) {
            auto [it, inserted] = seen.emplace(next, graph.nodes.size());
            if (inserted) {
                if (graph.nodes.size() >= max_states)
                    throw EdmError(ErrorKind::StateExplosion,
                                   "reachability graph exceeds " +
                                       std::to_string(max_states) + " markings");
                graph.nodes.push_back(next);
                frontier.push_back(it->second);
            }
            graph.edges.push_back({node, trans, it->second});
        }
    }
    return graph;
}

std::vector<StructuralFinding> check_incompleteness(const FuzzyPetriNet& net) {
    std::vector<StructuralFinding> findings;
    for (PlaceId p = 0; p < net.places.size(); ++p) {
        const FpnPlace& place = net.places[p];
        const bool produced = !net.producers(p).empty();
        const bool consumed = !net.consumers(p).empty();
        if (!produced && consumed && place.kind != VarKind::InputErf) {
            std::vector<std::string> rules;
            for (TransId t : net.consumers(p)) rules.push_back(net.transitions[t].origin);
            findings.push_back({FindingKind::DanglingAntecedent,
                                {place.prop.text()},
                                Severity::Error,
                                "no rule derives " + place.prop.text() +
                                    ", so rule(s) " + rules.front() +
                                    (rules.size() > 1 ? " and others" : "") +
                                    " can never fire"});
        }
        if (produced && !consumed && place.kind != VarKind::OutputAd) {
            findings.push_back({FindingKind::DeadEndConsequent,
                                {place.prop.text()},
                                Severity::Error,
                                place.prop.text() +
                                    " is derived but no rule ever uses it"});
        }
    }
    return findings;
}

std::vector<StructuralFinding> check_inconsistency(const FuzzyPetriNet& net,
                                                   const ReachabilityGraph& graph) {
    std::vector<StructuralFinding> findings;
    std::set<std::vector<std::string>> reported;
    for (const Marking& marking : graph.nodes) {
        std::map<std::string, std::vector<PlaceId>> by_variable;
        for (PlaceId p : marking.tokens) {
            const FpnPlace& place = net.places[p];
            if (place.kind == VarKind::InputErf) continue;
            by_variable[place.prop.variable].push_back(p);
        }
        for (auto& [variable, group] : by_variable) {
            if (group.size() < 2) continue;
            std::vector<std::string> subjects;
            for (PlaceId p : group) subjects.push_back(net.places[p].prop.text());
            std::sort(subjects.begin(), subjects.end());
            if (!reported.insert(subjects).second) continue;
            findings.push_back({FindingKind::Inconsistency, subjects,
                                Severity::Warning,
                                "mutually exclusive states of '" + variable +
                                    "' are derivable together"});
        }
    }
    return findings;
}

namespace {

// Bipartite dependency digraph used for cycle detection: node ids are
// places first, then transitions.
struct CycleGraph {
    std::size_t n;
    std::vector<std::vector<std::size_t>> adj;
    std::vector<std::size_t> scc; // component id per node

    explicit CycleGraph(const FuzzyPetriNet& net) {
        const std::size_t np = net.places.size();
        n = np + net.transitions.size();
        adj.assign(n, {});
        for (std::size_t t = 0; t < net.transitions.size(); ++t) {
            for (PlaceId p : net.transitions[t].inputs) adj[p].push_back(np + t);
            adj[np + t].push_back(net.transitions[t].output);
        }
        tarjan();
    }

    void tarjan() {
        scc.assign(n, 0);
        std::vector<std::size_t> index(n, 0), low(n, 0);
        std::vector<bool> on_stack(n, false);
        std::vector<std::size_t> stack;
        std::size_t counter = 1, components = 0;
        // iterative Tarjan
        struct Frame { std::size_t v; std::size_t edge; };
        for (std::size_t root = 0; root < n; ++root) {
            if (index[root]) continue;
            std::vector<Frame> frames{{root, 0}};
            index[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = true;
            while (!frames.empty()) {
                auto& [v, edge] = frames.back();
                if (edge < adj[v].size()) {
                    std::size_t w = adj[v][edge++];
                    if (!index[w]) {
                        index[w] = low[w] = counter++;
                        stack.push_back(w);
                        on_stack[w] = true;
                        frames.push_back({w, 0});
                    } else if (on_stack[w]) {
                        low[v] = std::min(low[v], index[w]);
                    }
                } else {
                    if (low[v] == index[v]) {
                        ++components;
                        while (true) {
                            std::size_t w = stack.back();
                            stack.pop_back();
                            on_stack[w] = false;
                            scc[w] = components;
                            if (w == v) break;
                        }
                    }
                    std::size_t v_done = v;
                    frames.pop_back();
                    if (!frames.empty())
                        low[frames.back().v] =
                            std::min(low[frames.back().v], low[v_done]);
                }
            }
        }
    }
};

// Elementary circuits rooted at their smallest node id: depth-first
// search that only walks nodes with larger ids inside the same strong
// component, recording an edge back to the root as a circuit.
class CircuitFinder {
public:
    CircuitFinder(const CycleGraph& graph, std::size_t cap)
        : graph_(graph), cap_(cap) {}

    bool truncated = false;

    std::vector<std::vector<std::size_t>> run() {
        for (std::size_t s = 0; s < graph_.n && !truncated; ++s) {
            path_.clear();
            on_path_.assign(graph_.n, false);
            dfs(s, s);
        }
        return circuits_;
    }

private:
    void dfs(std::size_t root, std::size_t v) {
        if (truncated) return;
        path_.push_back(v);
        on_path_[v] = true;
        for (std::size_t w : graph_.adj[v]) {
            if (w == root) {
                if (circuits_.size() >= cap_) { truncated = true; break; }
                circuits_.push_back(path_);
            } else if (w > root && !on_path_[w] &&
                       graph_.scc[w] == graph_.scc[root]) {
                dfs(root, w);
                if (truncated) break;
            }
        }
        on_path_[v] = false;
        path_.pop_back();
    }

    const CycleGraph& graph_;
    std::size_t cap_;
    std::vector<std::size_t> path_;
    std::vector<bool> on_path_;
    std::vector<std::vector<std::size_t>> circuits_;
};

} // namespace

std::vector<StructuralFinding> check_circularity(const FuzzyPetriNet& net,
                                                 std::size_t max_cycles) {
    CycleGraph graph(net);
    CircuitFinder finder(graph, max_cycles);
    std::vector<std::vector<std::size_t>> circuits = finder.run();

    const std::size_t np = net.places.size();
    std::vector<StructuralFinding> findings;
    for (const auto& circuit : circuits) {
        std::vector<std::string> rules;
        std::ostringstream path;
        for (std::size_t node : circuit) {
            if (node < np) {
                path << net.places[node].prop.text() << " -> ";
            } else {
                const std::string& origin = net.transitions[node - np].origin;
                path << "[" << origin << "] -> ";
                if (std::find(rules.begin(), rules.end(), origin) == rules.end())
                    rules.push_back(origin);
            }
        }
        path << net.places[circuit.front()].prop.text();
        findings.push_back({FindingKind::Circularity, rules, Severity::Error,
                            "circular dependency: " + path.str()});
    }
    if (finder.truncated)
        findings.push_back({FindingKind::Circularity,
                            {"(enumeration truncated)"},
                            Severity::Warning,
                            "more than " + std::to_string(max_cycles) +
                                " elementary cycles, enumeration stopped"});
    return findings;
}

namespace {

struct RuleShape {
    std::set<Proposition> antecedents;
    Proposition consequent;
    auto operator<=>(const RuleShape&) const = default;
};

struct OriginGroup {
    std::string name;
    std::vector<std::pair<RuleShape, int>> shapes; // with clause index
    std::set<RuleShape> shape_set;
};

bool strict_superset(const std::set<Proposition>& a, const std::set<Proposition>& b) {
    return a.size() > b.size() &&
           std::includes(a.begin(), a.end(), b.begin(), b.end());
}

std::string shape_text(const RuleShape& shape) {
    std::string out;
    for (const Proposition& p : shape.antecedents) {
        if (!out.empty()) out += " & ";
        out += p.text();
    }
    return out + " -> " + shape.consequent.text();
}

} // namespace

std::vector<StructuralFinding> check_redundancy(const std::vector<NormalizedRule>& rules) {
    std::vector<OriginGroup> groups;
    for (const NormalizedRule& r : rules) {
        if (groups.empty() || groups.back().name != r.origin)
            groups.push_back({r.origin, {}, {}});
        RuleShape shape{{r.antecedents.begin(), r.antecedents.end()}, r.consequent};
        groups.back().shapes.emplace_back(shape, r.clause_index);
        groups.back().shape_set.insert(std::move(shape));
    }

    std::vector<StructuralFinding> findings;

    // duplicates inside one rule (normalization keeps them)
    for (const OriginGroup& g : groups)
        for (std::size_t i = 0; i < g.shapes.size(); ++i)
            for (std::size_t j = i + 1; j < g.shapes.size(); ++j)
                if (g.shapes[i].first == g.shapes[j].first)
                    findings.push_back(
                        {FindingKind::DuplicateRule,
                         {g.name},
                         Severity::Warning,
                         "clauses " + std::to_string(g.shapes[i].second + 1) +
                             " and " + std::to_string(g.shapes[j].second + 1) +
                             " of '" + g.name + "' are identical: " +
                             shape_text(g.shapes[i].first)});

    // duplicate rule pairs
    for (std::size_t x = 0; x < groups.size(); ++x)
        for (std::size_t y = x + 1; y < groups.size(); ++y)
            if (groups[x].shape_set == groups[y].shape_set)
                findings.push_back({FindingKind::DuplicateRule,
                                    {groups[x].name, groups[y].name},
                                    Severity::Warning,
                                    "'" + groups[x].name + "' and '" +
                                        groups[y].name +
                                        "' normalize to the same rules"});

    // a rule with strictly more restrictive conditions than another rule
    // with the same conclusion is subsumed by it
    for (const OriginGroup& gx : groups)
        for (const OriginGroup& gy : groups) {
            if (&gx == &gy) {
                for (std::size_t i = 0; i < gx.shapes.size(); ++i)
                    for (std::size_t j = 0; j < gx.shapes.size(); ++j)
                        if (gx.shapes[i].first.consequent ==
                                gx.shapes[j].first.consequent &&
                            strict_superset(gx.shapes[i].first.antecedents,
                                            gx.shapes[j].first.antecedents)) {
                            findings.push_back(
                                {FindingKind::SubsumedRule,
                                 {gx.name},
                                 Severity::Warning,
                                 "clause " + std::to_string(gx.shapes[i].second + 1) +
                                     " of '" + gx.name +
                                     "' is subsumed by its clause " +
                                     std::to_string(gx.shapes[j].second + 1)});
                            goto next_pair; // one finding per rule pair
                        }
                goto next_pair;
            }
            for (const auto& [sx, cx] : gx.shapes) {
                for (const auto& [sy, cy] : gy.shapes)
                    if (sx.consequent == sy.consequent &&
                        strict_superset(sx.antecedents, sy.antecedents)) {
                        findings.push_back(
                            {FindingKind::SubsumedRule,
                             {gx.name, gy.name},
                             Severity::Warning,
                             "'" + gx.name + "' (" + shape_text(sx) +
                                 ") is subsumed by '" + gy.name + "' (" +
                                 shape_text(sy) + ")"});
                        goto next_pair;
                    }
            }
        next_pair:;
        }

    // a rule whose normalized set is strictly contained in another's
    // concludes less from the same conditions
    for (const OriginGroup& gx : groups)
        for (const OriginGroup& gy : groups) {
            if (&gx == &gy || gx.shape_set.size() >= gy.shape_set.size()) continue;
            if (std::includes(gy.shape_set.begin(), gy.shape_set.end(),
                              gx.shape_set.begin(), gx.shape_set.end()))
                findings.push_back({FindingKind::SubsumedRule,
                                    {gx.name, gy.name},
                                    Severity::Warning,
                                    "'" + gx.name + "' is subsumed by '" + gy.name +
                                        "', which implies more from the same conditions"});
        }

    return findings;
}

namespace {

void cartesian_markings(const FuzzyPetriNet& net,
                        const std::vector<const LinguisticVariable*>& erfs,
                        std::size_t index, Marking& current,
                        std::vector<Marking>& out, std::set<Marking>& seen) {
    if (index == erfs.size()) {
        if (seen.insert(current).second) out.push_back(current);
        return;
    }
    for (const Term& t : erfs[index]->terms) {
        auto place = net.find_place({erfs[index]->name, t.name});
        if (place) current.tokens.insert(*place);
        cartesian_markings(net, erfs, index + 1, current, out, seen);
        if (place) current.tokens.erase(*place);
    }
}

} // namespace

VerificationReport verify(const EdmModel& model, const VerifyOptions& options) {
    VerificationReport report;
    std::vector<NormalizedRule> normalized = normalize_model(model);
    if (normalized.empty()) {
        report.findings.push_back({FindingKind::EmptyRuleBase,
                                   {model.name},
                                   Severity::Warning,
                                   "model declares no rules, every check holds "
                                   "vacuously"});
        report.verdict = Verdict::Warnings;
        return report;
    }

    FuzzyPetriNet net = compile_fpn(normalized, model);

    // one reachability run per single-term assignment of the inputs
    std::vector<Marking> initials;
    {
        auto erfs = model.variables_of(VarKind::InputErf);
        Marking scratch;
        std::set<Marking> seen;
        cartesian_markings(net, erfs, 0, scratch, initials, seen);
    }
    for (const Marking& initial : initials)
        report.graphs.push_back(reachability(net, initial, options.max_states));

    auto append = [&](std::vector<StructuralFinding> part) {
        for (StructuralFinding& f : part) {
            if (std::find(report.findings.begin(), report.findings.end(), f) ==
                report.findings.end())
                report.findings.push_back(std::move(f));
        }
    };
    append(check_incompleteness(net));
    for (const ReachabilityGraph& graph : report.graphs)
        append(check_inconsistency(net, graph));
    append(check_circularity(net, options.max_cycles));
    append(check_redundancy(normalized));

    report.verdict = Verdict::Clean;
    for (const StructuralFinding& f : report.findings) {
        if (f.severity == Severity::Error) { report.verdict = Verdict::Errors; break; }
        report.verdict = Verdict::Warnings;
    }
    return report;
}

std::string export_dot(const FuzzyPetriNet& net, const ReachabilityGraph& graph) {
    std::ostringstream os;
    os << "digraph reachability {\n  rankdir=TB;\n";
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        std::string bits(net.places.size(), '0');
        for (PlaceId p : graph.nodes[i].tokens) bits[p] = '1';
        os << "  n" << i << " [shape=ellipse"
           << (i == graph.root ? ", peripheries=2" : "") << ", label=\"" << bits
           << "\"];\n";
    }
    for (const ReachabilityGraph::Edge& e : graph.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"t"
           << e.transition + 1 << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace edm
