#include "oamix/modelmat.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <tuple>

#include "oamix/error.hpp"

namespace oamix::modelmat {
namespace {

bool uses_amounts(ModelFamily f) { return is_amount_family(f); }

bool is_mixture_amount(ModelFamily f) {
    return f == ModelFamily::MixtureAmountLinear || f == ModelFamily::MixtureAmountQuadratic;
}

bool has_cross_products(ModelFamily f) {
    return f == ModelFamily::ScheffeQuadratic || f == ModelFamily::KQuadratic ||
           f == ModelFamily::MixtureAmountQuadratic || f == ModelFamily::ComponentAmountQuadratic;
}

bool has_linear(ModelFamily f) { return f != ModelFamily::KQuadratic; }

bool has_pure_quadratic(ModelFamily f) {
    return f == ModelFamily::KQuadratic || f == ModelFamily::ComponentAmountQuadratic;
}

bool intercept_for(const ModelSpec& spec) {
    const bool forced = uses_amounts(spec.family);
    if (spec.include_intercept && *spec.include_intercept != forced)
        throw Error(ErrorKind::SpecError,
                    std::string(family_name(spec.family)) +
                        (forced ? " always has an intercept" : " cannot have an intercept"));
    return forced;
}

std::string var(ModelFamily f, int i) { return (uses_amounts(f) ? "a" : "x") + std::to_string(i); }

std::string z_name(int k, int l) { return "z" + std::to_string(k) + std::to_string(l); }

void check_spec(const ModelSpec& spec, int m) {
    if (m < 2) throw Error(ErrorKind::SpecError, "need at least two components");
    if (!spec.interaction_terms.empty() && !spec.include_pwo)
        throw Error(ErrorKind::SpecError, "interaction terms require PWO columns");
    if (spec.include_pwo && m > 9)
        throw Error(ErrorKind::SpecError, "PWO column names support at most 9 components");
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& t : spec.interaction_terms) {
        const auto [k, l] = t.pair;
        if (k < 1 || l <= k || l > m)
            throw Error(ErrorKind::SpecError,
                        "pair (" + std::to_string(k) + "," + std::to_string(l) + ") not in the PWO set");
        if (t.component != k && t.component != l)
            throw Error(ErrorKind::SpecError, "component " + std::to_string(t.component) +
                                                  " is not part of pair " + z_name(k, l));
        if (!seen.insert({t.component, k, l}).second)
            throw Error(ErrorKind::SpecError, "duplicate interaction term");
    }
    if (spec.coding_range && !(*spec.coding_range > 0.0))
        throw Error(ErrorKind::SpecError, "coding range must be positive");
    intercept_for(spec);
}

void check_kind(ModelFamily f, DesignKind kind) {
    if (is_mixture_amount(f)) return;
    const bool want_amount = uses_amounts(f);
    if (want_amount != (kind == DesignKind::Amount))
        throw Error(ErrorKind::KindMismatch, std::string(family_name(f)) + " needs " +
                                                 (want_amount ? "an amount" : "a proportion") +
                                                 " design");
}

}  // namespace

std::vector<std::string> column_names(const ModelSpec& spec, int m) {
    check_spec(spec, m);
    const ModelFamily f = spec.family;
    std::vector<std::string> names;
    if (intercept_for(spec)) names.emplace_back("1");

    std::vector<std::string> base;
    if (has_linear(f))
        for (int i = 1; i <= m; ++i) base.push_back(var(f, i));
    if (has_pure_quadratic(f))
        for (int i = 1; i <= m; ++i) base.push_back(var(f, i) + "^2");
    if (has_cross_products(f))
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j) base.push_back(var(f, i) + "*" + var(f, j));
    names.insert(names.end(), base.begin(), base.end());

    if (is_mixture_amount(f)) {
        for (const auto& b : base) names.push_back(b + "*A");
        if (f == ModelFamily::MixtureAmountQuadratic)
            for (const auto& b : base) names.push_back(b + "*A^2");
    }
    if (spec.include_pwo)
        for (int k = 1; k <= m; ++k)
            for (int l = k + 1; l <= m; ++l) names.push_back(z_name(k, l));
    for (const auto& t : spec.interaction_terms)
        names.push_back(var(f, t.component) + "*" + z_name(t.pair.first, t.pair.second));
    if (spec.include_block) names.emplace_back("blk");
    return names;
}

ModelSpec resolve_coding(const BlockedDesign& design, ModelSpec spec) {
    if (spec.coding != Coding::Coded || spec.coding_range) return spec;
    if (uses_amounts(spec.family)) {
        double top = 0.0;
        for (const auto& run : design.runs) top = std::max(top, run.amount);
        if (!(top > 0.0)) throw Error(ErrorKind::SpecError, "cannot code amounts: all totals are zero");
        spec.coding_range = top;
    } else {
        spec.coding_range = 1.0;
    }
    return spec;
}

std::vector<double> model_row(const Run& run, int m, DesignKind kind, const ModelSpec& spec) {
    const ModelFamily f = spec.family;
    const auto mm = static_cast<std::size_t>(m);
    if (run.values.size() != mm || run.pwo.size() != pair_count(m))
        throw Error(ErrorKind::DimensionMismatch, "run does not match component count");

    // component variables: proportions or amounts
    std::vector<double> v(mm);
    const double total = run.amount;
    for (std::size_t i = 0; i < mm; ++i) {
        if (is_mixture_amount(f) && kind == DesignKind::Amount)
            v[i] = total > 0.0 ? run.values[i] / total : 0.0;
        else
            v[i] = run.values[i];
    }
    if (spec.coding == Coding::Coded) {
        const double range = spec.coding_range.value_or(1.0);
        for (auto& value : v) value = 2.0 * value / range - 1.0;
    }

    std::vector<double> row;
    if (intercept_for(spec)) row.push_back(1.0);
    std::vector<double> base;
    if (has_linear(f)) base.insert(base.end(), v.begin(), v.end());
    if (has_pure_quadratic(f))
        for (double value : v) base.push_back(value * value);
    if (has_cross_products(f))
        for (std::size_t i = 0; i < mm; ++i)
            for (std::size_t j = i + 1; j < mm; ++j) base.push_back(v[i] * v[j]);
    row.insert(row.end(), base.begin(), base.end());
    if (is_mixture_amount(f)) {
        for (double b : base) row.push_back(b * total);
        if (f == ModelFamily::MixtureAmountQuadratic)
            for (double b : base) row.push_back(b * total * total);
    }
    if (spec.include_pwo)
        for (int z : run.pwo) row.push_back(static_cast<double>(z));
    for (const auto& t : spec.interaction_terms) {
        const int z = run.pwo[pair_index(t.pair.first, t.pair.second, m)];
        row.push_back(v[static_cast<std::size_t>(t.component - 1)] * static_cast<double>(z));
    }
    if (spec.include_block) row.push_back(run.block == 1 ? -1.0 : 1.0);
    return row;
}

ModelMatrix build_model_matrix(const BlockedDesign& design, const ModelSpec& spec_in) {
    check_kind(spec_in.family, design.kind);
    require_valid(design);
    ModelMatrix out;
    out.columns = column_names(spec_in, design.m);
    if (spec_in.include_block && design.n_blocks != 2)
        throw Error(ErrorKind::SpecError, "block column needs exactly two blocks");
    const ModelSpec spec = resolve_coding(design, spec_in);

    out.rows = design.runs.size();
    out.data.reserve(out.rows * out.columns.size());
    for (const auto& run : design.runs) {
        const auto row = model_row(run, design.m, design.kind, spec);
        out.data.insert(out.data.end(), row.begin(), row.end());
    }
    return out;
}

std::vector<InteractionTerm> default_interaction_subset(int m) {
    if (m != 3)
        throw Error(ErrorKind::Unsupported,
                    "no default interaction subset for m=" + std::to_string(m) +
                        "; supply the terms explicitly");
    return {{1, {1, 2}}, {1, {1, 3}}, {2, {2, 3}}};
}

std::vector<InteractionTerm> full_interaction_set(int m) {
    std::vector<InteractionTerm> terms;
    for (int k = 1; k <= m; ++k)
        for (int l = k + 1; l <= m; ++l) {
            terms.push_back({k, {k, l}});
            terms.push_back({l, {k, l}});
        }
    return terms;
}

linalg::Matrix to_matrix(const ModelMatrix& x) {
    return linalg::Matrix(x.rows, x.cols(), x.data);
}

namespace {

const std::vector<std::pair<std::string, ModelFamily>>& short_names() {
    static const std::vector<std::pair<std::string, ModelFamily>> names = {
        {"scheffe-l", ModelFamily::ScheffeLinear},
        {"scheffe-q", ModelFamily::ScheffeQuadratic},
        {"k-q", ModelFamily::KQuadratic},
        {"ma-l", ModelFamily::MixtureAmountLinear},
        {"ma-q", ModelFamily::MixtureAmountQuadratic},
        {"ca-l", ModelFamily::ComponentAmountLinear},
        {"ca-q", ModelFamily::ComponentAmountQuadratic},
    };
    return names;
}

}  // namespace

ModelFamily family_from_name(std::string_view name) {
    for (const auto& [n, f] : short_names())
        if (n == name) return f;
    throw Error(ErrorKind::SpecError, "unknown model '" + std::string(name) + "'");
}

const std::vector<std::string>& family_short_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& entry : short_names()) out.push_back(entry.first);
        return out;
    }();
    return names;
}

std::vector<InteractionTerm> parse_interactions(std::string_view text, int m) {
    if (text.empty() || text == "none") return {};
    if (text == "default") return default_interaction_subset(m);
    if (text == "full") return full_interaction_set(m);
    static const std::regex named(R"(^[xa]?(\d+)\*z(\d)(\d)$)");
    static const std::regex compact(R"(^(\d+):(\d)(\d)$)");
    std::vector<InteractionTerm> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        std::string item(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        std::smatch mt;
        if (!std::regex_match(item, mt, named) && !std::regex_match(item, mt, compact))
            throw Error(ErrorKind::SpecError, "bad interaction term '" + item + "'");
        out.push_back({std::stoi(mt[1]), {std::stoi(mt[2]), std::stoi(mt[3])}});
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace oamix::modelmat
