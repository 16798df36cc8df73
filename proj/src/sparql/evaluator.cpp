#include "chemlink/sparql/evaluator.hpp"

#include "chemlink/error.hpp"
#include "chemlink/sparql/parser.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <regex>

namespace chemlink::sparql {

namespace {

template <class T>
bool apply_op(CompareOp op, const T& a, const T& b) {
    switch (op) {
    case CompareOp::Lt: return a < b;
    case CompareOp::Gt: return b < a;
    case CompareOp::Le: return !(b < a);
    case CompareOp::Ge: return !(a < b);
    case CompareOp::Eq: return a == b;
    case CompareOp::Ne: return !(a == b);
    }
    return false;
}

} // namespace

bool comparison_holds(CompareOp op, const Term& value, const Term& constant) {
    if (is_iri(value) && is_iri(constant)) {
        if (op != CompareOp::Eq && op != CompareOp::Ne) return false;
        return apply_op(op, std::get<Iri>(value).str(), std::get<Iri>(constant).str());
    }
    if (!is_literal(value) || !is_literal(constant)) return false;
    const auto& a = std::get<Literal>(value);
    const auto& b = std::get<Literal>(constant);
    if (a.is_numeric() && b.is_numeric()) return apply_op(op, *a.numeric_value(), *b.numeric_value());
    if (a.datatype() == Datatype::String && b.datatype() == Datatype::String)
        return apply_op(op, a.lexical(), b.lexical());
    if (a.datatype() == Datatype::Boolean && b.datatype() == Datatype::Boolean)
        return apply_op(op, *a.boolean_value(), *b.boolean_value());
    return false;
}

namespace {

constexpr TermId kUnbound = std::numeric_limits<TermId>::max();
using IdRow = std::vector<TermId>;

class Evaluator {
public:
    Evaluator(const QueryAst& ast, const Store& store) : ast_(ast), store_(store) {
        for (const auto& v : pattern_variables(ast.where)) slot_of(v.name);
    }

    ResultTable run() {
        auto rows = eval_group(ast_.where);
        ResultTable table;
        table.header = result_header(ast_);
        if (ast_.is_grouped()) {
            table.rows = aggregate(rows);
        } else {
            std::vector<std::size_t> slots;
            for (const auto& name : table.header) slots.push_back(slot_of(name));
            for (const auto& row : rows) {
                Row out;
                out.reserve(slots.size());
                for (auto s : slots) out.push_back(cell(row[s]));
                table.rows.push_back(std::move(out));
            }
        }
        finish(table);
        return table;
    }

private:
    std::size_t slot_of(const std::string& name) {
        auto [it, inserted] = slots_.try_emplace(name, slots_.size());
        return it->second;
    }

    Cell cell(TermId id) const {
        if (id == kUnbound) return std::nullopt;
        return store_.term(id);
    }

    struct CompiledPattern {
        std::optional<TermId> constant[3];
        std::optional<std::size_t> slot[3];
    };

    // Returns false when a constant does not occur in the store at all.
    bool compile(const TriplePattern& tp, CompiledPattern& out) {
        const PatternTerm* parts[3] = {&tp.subject, &tp.predicate, &tp.object};
        for (int i = 0; i < 3; ++i) {
            if (const auto* v = std::get_if<Variable>(parts[i])) {
                out.slot[i] = slot_of(v->name);
                continue;
            }
            Term t = std::holds_alternative<Iri>(*parts[i]) ? Term(std::get<Iri>(*parts[i]))
                                                            : Term(std::get<Literal>(*parts[i]));
            auto id = store_.lookup(t);
            if (!id) return false;
            out.constant[i] = *id;
        }
        return true;
    }

    std::vector<std::size_t> filter_slots(const FilterExpr& f) {
        const auto& name = std::holds_alternative<Comparison>(f) ? std::get<Comparison>(f).variable.name
                                                                 : std::get<RegexFilter>(f).variable.name;
        return {slot_of(name)};
    }

    const std::regex& regex_for(const RegexFilter& r) {
        auto key = std::make_pair(r.pattern, r.case_insensitive);
        auto it = regex_cache_.find(key);
        if (it == regex_cache_.end()) {
            auto flags = std::regex::ECMAScript;
            if (r.case_insensitive) flags |= std::regex::icase;
            it = regex_cache_.emplace(key, std::regex(r.pattern, flags)).first;
        }
        return it->second;
    }

    bool accepts(const FilterExpr& f, const IdRow& row) {
        std::size_t slot = filter_slots(f).front();
        TermId id = row[slot];
        if (id == kUnbound) return false;
        const Term& value = store_.term(id);
        if (const auto* c = std::get_if<Comparison>(&f)) return comparison_holds(c->op, value, c->constant);
        const auto& r = std::get<RegexFilter>(f);
        if (!is_literal(value) || std::get<Literal>(value).datatype() != Datatype::String) return false;
        return std::regex_search(std::get<Literal>(value).lexical(), regex_for(r));
    }

    void apply_filter(const FilterExpr& f, std::vector<IdRow>& rows) {
        rows.erase(std::remove_if(rows.begin(), rows.end(), [&](const IdRow& r) { return !accepts(f, r); }),
                   rows.end());
    }

    static void dedup(std::vector<IdRow>& rows) {
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    }

    std::vector<IdRow> eval_group(const GroupPattern& g) {
        auto vars = pattern_variables(g);
        for (const auto& f : g.filters) {
            const auto& name = std::holds_alternative<Comparison>(f) ? std::get<Comparison>(f).variable.name
                                                                     : std::get<RegexFilter>(f).variable.name;
            if (std::none_of(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == name; }))
                throw EvalError("FILTER variable ?" + name + " is not bound by its group");
        }

        const std::size_t width = slots_.size();
        std::vector<IdRow> rows{IdRow(width, kUnbound)};

        std::vector<CompiledPattern> patterns;
        for (const auto& tp : g.triples) {
            CompiledPattern cp;
            if (!compile(tp, cp)) return {};
            patterns.push_back(cp);
        }

        std::vector<bool> bound(width, false);
        std::vector<bool> filter_done(g.filters.size(), false);
        std::vector<bool> used(patterns.size(), false);

        for (std::size_t step = 0; step < patterns.size(); ++step) {
            std::size_t best = pick_next(patterns, used, bound);
            used[best] = true;
            rows = extend(rows, patterns[best]);
            for (int i = 0; i < 3; ++i)
                if (patterns[best].slot[i]) bound[*patterns[best].slot[i]] = true;
            for (std::size_t f = 0; f < g.filters.size(); ++f) {
                if (filter_done[f]) continue;
                auto fs = filter_slots(g.filters[f]);
                if (std::all_of(fs.begin(), fs.end(), [&](std::size_t s) { return bound[s]; })) {
                    apply_filter(g.filters[f], rows);
                    filter_done[f] = true;
                }
            }
            if (rows.empty()) return {};
        }

        for (const auto& u : g.unions) {
            std::vector<IdRow> branch_rows;
            for (const auto& branch : u.branches) {
                auto part = eval_group(branch);
                branch_rows.insert(branch_rows.end(), std::make_move_iterator(part.begin()),
                                   std::make_move_iterator(part.end()));
            }
            dedup(branch_rows);
            rows = join(rows, branch_rows);
            if (rows.empty()) return {};
        }

        for (std::size_t f = 0; f < g.filters.size(); ++f)
            if (!filter_done[f]) apply_filter(g.filters[f], rows);
        dedup(rows);
        return rows;
    }

    // Most selective next pattern: fewest free positions given the bound
    // variables, then the smallest index range over its constants.
    std::size_t pick_next(const std::vector<CompiledPattern>& patterns, const std::vector<bool>& used,
                          const std::vector<bool>& bound) const {
        std::size_t best = 0;
        std::pair<int, std::size_t> best_score{std::numeric_limits<int>::max(), 0};
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            if (used[i]) continue;
            const auto& p = patterns[i];
            int free = 0;
            for (int k = 0; k < 3; ++k)
                if (p.slot[k] && !bound[*p.slot[k]]) ++free;
            IdPattern ip{p.constant[0], p.constant[1], p.constant[2], std::nullopt};
            std::pair<int, std::size_t> score{free, store_.estimate(ip)};
            if (score < best_score) {
                best_score = score;
                best = i;
            }
        }
        return best;
    }

    std::vector<IdRow> extend(const std::vector<IdRow>& rows, const CompiledPattern& p) const {
        std::vector<IdRow> out;
        for (const auto& row : rows) {
            std::optional<TermId> pos[3];
            for (int k = 0; k < 3; ++k) {
                if (p.constant[k]) pos[k] = p.constant[k];
                else if (row[*p.slot[k]] != kUnbound) pos[k] = row[*p.slot[k]];
            }
            IdPattern ip{pos[0], pos[1], pos[2], std::nullopt};
            store_.scan(ip, true, [&](const QuadIds& q) {
                const TermId ids[3] = {q.s, q.p, q.o};
                IdRow next = row;
                for (int k = 0; k < 3; ++k) {
                    if (!p.slot[k]) continue;
                    TermId& cellref = next[*p.slot[k]];
                    if (cellref == kUnbound) cellref = ids[k];
                    else if (cellref != ids[k]) return;   // repeated variable disagrees
                }
                out.push_back(std::move(next));
            });
        }
        return out;
    }

    static std::vector<IdRow> join(const std::vector<IdRow>& left, const std::vector<IdRow>& right) {
        std::vector<IdRow> out;
        for (const auto& l : left) {
            for (const auto& r : right) {
                IdRow merged = l;
                bool ok = true;
                for (std::size_t i = 0; i < merged.size(); ++i) {
                    if (r[i] == kUnbound) continue;
                    if (merged[i] == kUnbound) merged[i] = r[i];
                    else if (merged[i] != r[i]) { ok = false; break; }
                }
                if (ok) out.push_back(std::move(merged));
            }
        }
        return out;
    }

    std::vector<Row> aggregate(const std::vector<IdRow>& rows) {
        std::vector<std::size_t> key_slots;
        for (const auto& v : ast_.group_by) key_slots.push_back(slot_of(v.name));
        std::map<IdRow, std::vector<const IdRow*>> groups;
        for (const auto& row : rows) {
            IdRow key;
            for (auto s : key_slots) key.push_back(row[s]);
            groups[key].push_back(&row);
        }
        std::vector<Row> out;
        for (const auto& [key, members] : groups) {
            Row r;
            for (const auto& item : ast_.projection) {
                if (const auto* v = std::get_if<Variable>(&item)) {
                    r.push_back(cell(members.front()->at(slot_of(v->name))));
                    continue;
                }
                const auto& agg = std::get<CountAggregate>(item);
                std::int64_t n = 0;
                if (!agg.argument) {
                    n = static_cast<std::int64_t>(members.size());
                } else {
                    std::size_t s = slot_of(agg.argument->name);
                    for (const auto* m : members)
                        if ((*m)[s] != kUnbound) ++n;
                }
                r.push_back(Term(Literal::integer(n)));
            }
            out.push_back(std::move(r));
        }
        return out;
    }

    void finish(ResultTable& table) const {
        auto& rows = table.rows;
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return compare_rows(a, b) < 0; });
        rows.erase(std::unique(rows.begin(), rows.end(),
                               [](const Row& a, const Row& b) { return compare_rows(a, b) == 0; }),
                   rows.end());
        if (!ast_.order_by.empty()) {
            std::vector<std::pair<std::size_t, bool>> keys;
            for (const auto& k : ast_.order_by) keys.emplace_back(table.column(k.variable.name), k.descending);
            std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
                for (const auto& [col, desc] : keys) {
                    int c = compare_cells(a[col], b[col]);
                    if (c != 0) return desc ? c > 0 : c < 0;
                }
                return false;
            });
        }
        std::size_t offset = std::min(ast_.offset.value_or(0), rows.size());
        rows.erase(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(offset));
        if (ast_.limit && rows.size() > *ast_.limit) rows.resize(*ast_.limit);
    }

    const QueryAst& ast_;
    const Store& store_;
    std::map<std::string, std::size_t> slots_;
    std::map<std::pair<std::string, bool>, std::regex> regex_cache_;
};

} // namespace

ResultTable evaluate(const QueryAst& ast, const Store& store) { return Evaluator(ast, store).run(); }

ResultTable run_query(std::string_view text, const Store& store, const PrefixTable& prefixes) {
    return evaluate(parse_query(text, prefixes), store);
}

} // namespace chemlink::sparql
