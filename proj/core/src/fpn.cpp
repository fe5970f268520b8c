#include "edm/fpn.hpp"

#include <algorithm>
#include <iomanip>
#include <queue>
#include <sstream>

namespace edm {

bool FuzzyPetriNet::input_fn(PlaceId p, TransId t) const {
    const auto& ins = transitions[t].inputs;
    return std::find(ins.begin(), ins.end(), p) != ins.end();
}

bool FuzzyPetriNet::output_fn(TransId t, PlaceId p) const {
    return transitions[t].output == p;
}

std::optional<PlaceId> FuzzyPetriNet::find_place(const Proposition& prop) const {
    auto it = place_index.find(prop);
    if (it == place_index.end()) return std::nullopt;
    return it->second;
}

bool FuzzyPetriNet::acyclic() const {
    // Place-level dependency digraph: p -> output(t) for every t consuming p.
    const std::size_t n = places.size();
    std::vector<int> state(n, 0); // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<PlaceId, std::size_t>> stack;
    auto succ = [&](PlaceId p, std::size_t i) -> std::optional<PlaceId> {
        if (i >= consumers_by_place[p].size()) return std::nullopt;
        return transitions[consumers_by_place[p][i]].output;
    };
    for (PlaceId root = 0; root < n; ++root) {
        if (state[root] != 0) continue;
        stack.push_back({root, 0});
        state[root] = 1;
        while (!stack.empty()) {
            auto& [p, i] = stack.back();
            if (auto q = succ(p, i)) {
                ++i;
                if (state[*q] == 1) return false;
                if (state[*q] == 0) {
                    state[*q] = 1;
                    stack.push_back({*q, 0});
                }
            } else {
                state[p] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

FuzzyPetriNet compile_fpn(const std::vector<NormalizedRule>& rules,
                          const EdmModel& model) {
    if (rules.empty())
        throw EdmError(ErrorKind::EmptyRuleSet, "no rules to compile");

    std::set<Proposition> used;
    for (const NormalizedRule& r : rules) {
        used.insert(r.antecedents.begin(), r.antecedents.end());
        used.insert(r.consequent);
    }

    FuzzyPetriNet net;
    for (const LinguisticVariable& var : model.variables)
        for (const Term& t : var.terms) {
            Proposition prop{var.name, t.name};
            if (!used.count(prop)) continue;
            net.place_index[prop] = static_cast<PlaceId>(net.places.size());
            net.places.push_back({prop, var.kind});
        }

    for (const NormalizedRule& r : rules) {
        if (r.antecedents.empty())
            throw EdmError(ErrorKind::EmptyClause,
                           "rule '" + r.origin + "': transition needs at least "
                           "one input place");
        FpnTransition t;
        t.origin = r.origin;
        t.clause_index = r.clause_index;
        t.consequent_index = r.consequent_index;
        t.cf = r.cf;
        for (const Proposition& p : r.antecedents) {
            auto id = net.find_place(p);
            if (!id)
                throw EdmError(ErrorKind::UnknownProposition,
                               "rule '" + r.origin + "': proposition " + p.text() +
                                   " is not declared in the model");
            t.inputs.push_back(*id);
        }
        auto out = net.find_place(r.consequent);
        if (!out)
            throw EdmError(ErrorKind::UnknownProposition,
                           "rule '" + r.origin + "': proposition " +
                               r.consequent.text() + " is not declared in the model");
        t.output = *out;
        net.transitions.push_back(std::move(t));
    }

    net.producers_by_place.assign(net.places.size(), {});
    net.consumers_by_place.assign(net.places.size(), {});
    for (TransId t = 0; t < net.transitions.size(); ++t) {
        net.producers_by_place[net.transitions[t].output].push_back(t);
        for (PlaceId p : net.transitions[t].inputs)
            net.consumers_by_place[p].push_back(t);
    }
    for (auto& v : net.consumers_by_place) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return net;
}

std::map<Proposition, Degree> reason(const FuzzyPetriNet& net,
                                     const std::map<Proposition, Degree>& inputs) {
    if (!net.acyclic())
        throw EdmError(ErrorKind::CyclicNet,
                       "net has a circular rule dependency, cannot propagate");

    const std::size_t n = net.places.size();
    std::vector<std::optional<double>> degree(n);
    for (const auto& [prop, deg] : inputs) {
        auto id = net.find_place(prop);
        if (!id)
            throw EdmError(ErrorKind::UnknownProposition,
                           "proposition " + prop.text() + " is not a place of the net");
        degree[*id] = deg.value();
    }

    // Kahn order over the place dependency digraph, then one sweep: on a
    // DAG all contributions to a place are settled before it is visited.
    std::vector<std::size_t> incoming(n, 0);
    for (const FpnTransition& t : net.transitions)
        incoming[t.output] += t.inputs.size();
    std::queue<PlaceId> ready;
    for (PlaceId p = 0; p < n; ++p)
        if (incoming[p] == 0) ready.push(p);
    std::vector<PlaceId> order;
    while (!ready.empty()) {
        PlaceId p = ready.front();
        ready.pop();
        order.push_back(p);
        for (TransId t : net.consumers(p)) {
            PlaceId out = net.transitions[t].output;
            if (--incoming[out] == 0) ready.push(out);
        }
    }

    for (PlaceId p : order) {
        std::optional<double> best = degree[p];
        for (TransId ti : net.producers(p)) {
            const FpnTransition& t = net.transitions[ti];
            double lowest = 1.0;
            bool all_known = true;
            for (PlaceId in : t.inputs) {
                if (!degree[in]) { all_known = false; break; }
                lowest = std::min(lowest, *degree[in]);
            }
            if (!all_known) continue;
            double contribution = lowest * t.cf.value();
            if (!best || contribution > *best) best = contribution;
        }
        degree[p] = best;
    }

    std::map<Proposition, Degree> out;
    for (PlaceId p = 0; p < n; ++p)
        if (degree[p]) out.emplace(net.places[p].prop, Degree(*degree[p]));
    return out;
}

std::vector<std::pair<TransId, Marking>> fire_boolean(const FuzzyPetriNet& net,
                                                      const Marking& marking) {
    std::vector<std::pair<TransId, Marking>> out;
    for (TransId ti = 0; ti < net.transitions.size(); ++ti) {
        const FpnTransition& t = net.transitions[ti];
        if (marking.tokens.count(t.output)) continue;
        bool enabled = std::all_of(t.inputs.begin(), t.inputs.end(), [&](PlaceId p) {
            return marking.tokens.count(p) > 0;
        });
        if (!enabled) continue;
        Marking next;
        next.tokens = marking.tokens;
        next.tokens.insert(t.output);
        out.emplace_back(ti, std::move(next));
    }
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string cf_text(Degree cf) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << cf.value();
    return os.str();
}

} // namespace

std::string export_dot(const FuzzyPetriNet& net) {
    std::ostringstream os;
    os << "digraph fpn {\n  rankdir=LR;\n";
    for (PlaceId p = 0; p < net.places.size(); ++p)
        os << "  p" << p + 1 << " [shape=circle, label=\""
           << dot_escape(net.places[p].prop.text()) << "\"];\n";
    for (TransId t = 0; t < net.transitions.size(); ++t) {
        const FpnTransition& tr = net.transitions[t];
        std::ostringstream label;
        label << tr.origin << "#" << tr.clause_index + 1;
        if (tr.consequent_index > 0) label << "." << tr.consequent_index + 1;
        label << "\\nf=" << cf_text(tr.cf);
        os << "  t" << t + 1
           << " [shape=box, style=filled, fillcolor=black, fontcolor=white, "
              "height=0.15, label=\"" << label.str() << "\"];\n";
    }
    for (TransId t = 0; t < net.transitions.size(); ++t) {
        for (PlaceId p : net.transitions[t].inputs)
            os << "  p" << p + 1 << " -> t" << t + 1 << ";\n";
        os << "  t" << t + 1 << " -> p" << net.transitions[t].output + 1 << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace edm
