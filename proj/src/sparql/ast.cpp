#include "chemlink/sparql/ast.hpp"

#include <algorithm>
#include <sstream>

namespace chemlink::sparql {

bool operator==(const UnionPattern& a, const UnionPattern& b) { return a.branches == b.branches; }

std::string_view op_text(CompareOp op) noexcept {
    switch (op) {
    case CompareOp::Lt: return "<";
    case CompareOp::Gt: return ">";
    case CompareOp::Le: return "<=";
    case CompareOp::Ge: return ">=";
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    }
    return "=";
}

bool QueryAst::has_aggregate() const noexcept {
    return std::any_of(projection.begin(), projection.end(),
                       [](const ProjectionItem& item) { return std::holds_alternative<CountAggregate>(item); });
}

namespace {

void collect_variables(const GroupPattern& group, std::vector<Variable>& out) {
    auto add = [&out](const PatternTerm& t) {
        if (const auto* v = std::get_if<Variable>(&t)) {
            if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
        }
    };
    for (const auto& tp : group.triples) {
        add(tp.subject);
        add(tp.predicate);
        add(tp.object);
    }
    for (const auto& u : group.unions)
        for (const auto& branch : u.branches) collect_variables(branch, out);
}

std::string term_text(const PatternTerm& t) {
    if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
    if (const auto* iri = std::get_if<Iri>(&t)) return to_ntriples(Term(*iri));
    return to_ntriples(Term(std::get<Literal>(t)));
}

std::string constant_text(const Term& t) { return to_ntriples(t); }

void print_group(std::ostringstream& out, const GroupPattern& group, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out << "{\n";
    for (const auto& tp : group.triples) {
        out << indent << "  " << term_text(tp.subject) << ' ' << term_text(tp.predicate) << ' '
            << term_text(tp.object) << " .\n";
    }
    for (const auto& u : group.unions) {
        out << indent << "  ";
        for (std::size_t i = 0; i < u.branches.size(); ++i) {
            if (i > 0) out << " UNION ";
            print_group(out, u.branches[i], depth + 1);
        }
        out << "\n";
    }
    for (const auto& f : group.filters) {
        out << indent << "  FILTER (";
        if (const auto* c = std::get_if<Comparison>(&f)) {
            out << '?' << c->variable.name << ' ' << op_text(c->op) << ' ' << constant_text(c->constant);
        } else {
            const auto& r = std::get<RegexFilter>(f);
            out << "regex(?" << r.variable.name << ", \"" << escape_literal(r.pattern) << '"';
            if (r.case_insensitive) out << ", \"i\"";
            out << ')';
        }
        out << ")\n";
    }
    out << indent << "}";
}

} // namespace

std::vector<Variable> pattern_variables(const GroupPattern& group) {
    std::vector<Variable> out;
    collect_variables(group, out);
    return out;
}

std::vector<std::string> result_header(const QueryAst& ast) {
    std::vector<std::string> header;
    if (ast.star) {
        for (const auto& v : pattern_variables(ast.where)) header.push_back(v.name);
        return header;
    }
    for (const auto& item : ast.projection) {
        if (const auto* v = std::get_if<Variable>(&item)) header.push_back(v->name);
        else header.push_back(std::get<CountAggregate>(item).alias.name);
    }
    return header;
}

std::string to_string(const QueryAst& ast) {
    std::ostringstream out;
    out << "SELECT ";
    if (ast.distinct) out << "DISTINCT ";
    if (ast.star) {
        out << '*';
    } else {
        for (std::size_t i = 0; i < ast.projection.size(); ++i) {
            if (i > 0) out << ' ';
            if (const auto* v = std::get_if<Variable>(&ast.projection[i])) {
                out << '?' << v->name;
            } else {
                const auto& agg = std::get<CountAggregate>(ast.projection[i]);
                out << "(COUNT(" << (agg.argument ? "?" + agg.argument->name : std::string("*")) << ") AS ?"
                    << agg.alias.name << ')';
            }
        }
    }
    out << " WHERE ";
    print_group(out, ast.where, 0);
    if (!ast.group_by.empty()) {
        out << "\nGROUP BY";
        for (const auto& v : ast.group_by) out << " ?" << v.name;
    }
    if (!ast.order_by.empty()) {
        out << "\nORDER BY";
        for (const auto& k : ast.order_by) out << (k.descending ? " DESC(?" : " ASC(?") << k.variable.name << ')';
    }
    if (ast.limit) out << "\nLIMIT " << *ast.limit;
    if (ast.offset) out << "\nOFFSET " << *ast.offset;
    out << "\n";
    return out.str();
}

} // namespace chemlink::sparql
