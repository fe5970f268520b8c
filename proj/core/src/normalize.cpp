#include "edm/normalize.hpp"

namespace edm {

std::string NormalizedRule::label() const {
    std::string out = origin;
    if (clause_index > 0 || consequent_index > 0) {
        out += "#" + std::to_string(clause_index + 1);
        if (consequent_index > 0)
            out += "." + std::to_string(consequent_index + 1);
    }
    return out;
}

std::vector<NormalizedRule> normalize_rule(const EthicalRule& rule) {
    std::vector<NormalizedRule> out;
    out.reserve(rule.antecedent.size() * rule.consequents.size());
    for (std::size_t ci = 0; ci < rule.antecedent.size(); ++ci)
        for (std::size_t qi = 0; qi < rule.consequents.size(); ++qi)
            out.push_back({rule.name, static_cast<int>(ci), static_cast<int>(qi),
                           rule.antecedent[ci], rule.consequents[qi], rule.cf});
    return out;
}

std::vector<NormalizedRule> normalize_model(const EdmModel& model) {
    std::vector<NormalizedRule> out;
    for (const EthicalRule* rule : model.all_rules()) {
        std::vector<NormalizedRule> part = normalize_rule(*rule);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace edm
