#include "chemlink/sparql/parser.hpp"

#include "chemlink/error.hpp"
#include "chemlink/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <stdexcept>

namespace chemlink::sparql {

namespace {

enum class Tok {
    LBrace, RBrace, LParen, RParen, Dot, Comma, Semicolon, Star,
    Var, IriRef, PName, String, Integer, Decimal, Word, Op, End
};

struct Token {
    Tok kind;
    std::string text;       // var name, IRI, string value, op, word...
    std::size_t pos;
    std::optional<std::string> datatype{};   // for String: raw "^^" target (IRI or pname)
    bool datatype_is_iri = false;
    std::size_t datatype_pos = 0;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= s_.size()) {
                out.push_back(Token{Tok::End, "", pos_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    [[noreturn]] void fail(const std::string& message, std::size_t at) const { throw ParseError(message, 0, at); }

    void skip_space() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    // '<' starts an IRI only when a '>' closes it before any character that
    // cannot appear in an IRI and the content has a scheme.
    std::optional<std::size_t> iri_end(std::size_t start) const {
        for (std::size_t i = start + 1; i < s_.size(); ++i) {
            char c = s_[i];
            if (c == '>') {
                std::string_view body = s_.substr(start + 1, i - start - 1);
                if (is_valid_iri(body)) return i;
                return std::nullopt;
            }
            if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"' || c == '{' || c == '}')
                return std::nullopt;
        }
        return std::nullopt;
    }

    Token next() {
        std::size_t start = pos_;
        char c = s_[pos_];
        auto single = [&](Tok kind) {
            ++pos_;
            return Token{kind, std::string(1, c), start};
        };
        switch (c) {
        case '{': return single(Tok::LBrace);
        case '}': return single(Tok::RBrace);
        case '(': return single(Tok::LParen);
        case ')': return single(Tok::RParen);
        case ',': return single(Tok::Comma);
        case ';': return single(Tok::Semicolon);
        case '*': return single(Tok::Star);
        default: break;
        }
        if (c == '.') {
            if (pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) return number();
            return single(Tok::Dot);
        }
        if (c == '?' || c == '$') {
            ++pos_;
            std::size_t b = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            if (pos_ == b) fail("empty variable name", start);
            return Token{Tok::Var, std::string(s_.substr(b, pos_ - b)), start};
        }
        if (c == '<') {
            if (auto end = iri_end(pos_)) {
                std::string body(s_.substr(pos_ + 1, *end - pos_ - 1));
                pos_ = *end + 1;
                return Token{Tok::IriRef, std::move(body), start};
            }
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
                pos_ += 2;
                return Token{Tok::Op, "<=", start};
            }
            ++pos_;
            return Token{Tok::Op, "<", start};
        }
        if (c == '>') {
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
                pos_ += 2;
                return Token{Tok::Op, ">=", start};
            }
            ++pos_;
            return Token{Tok::Op, ">", start};
        }
        if (c == '=') {
            ++pos_;
            return Token{Tok::Op, "=", start};
        }
        if (c == '!') {
            if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') {
                pos_ += 2;
                return Token{Tok::Op, "!=", start};
            }
            fail("unexpected '!'", start);
        }
        if (c == '"' || c == '\'') return string_literal();
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '+' || c == '-') && pos_ + 1 < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '.')))
            return number();
        if (is_name_start(c) || c == ':') return word_or_pname();
        fail(std::string("unexpected character '") + c + "'", start);
    }

    Token number() {
        std::size_t start = pos_;
        if (s_[pos_] == '+' || s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        bool decimal = false;
        if (pos_ + 1 < s_.size() && s_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            decimal = true;
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        std::string text(s_.substr(start, pos_ - start));
        if (text == "+" || text == "-") fail("malformed number", start);
        return Token{decimal ? Tok::Decimal : Tok::Integer, std::move(text), start};
    }

    Token string_literal() {
        std::size_t start = pos_;
        char quote = s_[pos_++];
        std::string value;
        for (;;) {
            if (pos_ >= s_.size()) fail("unterminated string", start);
            char c = s_[pos_++];
            if (c == quote) break;
            if (c == '\n') fail("newline in string", start);
            if (c != '\\') {
                value += c;
                continue;
            }
            if (pos_ >= s_.size()) fail("dangling escape", pos_);
            char e = s_[pos_++];
            switch (e) {
            case 't': value += '\t'; break;
            case 'n': value += '\n'; break;
            case 'r': value += '\r'; break;
            case '"': value += '"'; break;
            case '\'': value += '\''; break;
            case '\\': value += '\\'; break;
            default: fail(std::string("unknown escape \\") + e, pos_ - 2);
            }
        }
        Token tok{Tok::String, std::move(value), start};
        if (pos_ < s_.size() && s_[pos_] == '@') fail("language tags are not supported", pos_);
        if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '^') {
            pos_ += 2;
            tok.datatype_pos = pos_;
            if (pos_ < s_.size() && s_[pos_] == '<') {
                auto end = iri_end(pos_);
                if (!end) fail("malformed datatype IRI", pos_);
                tok.datatype = std::string(s_.substr(pos_ + 1, *end - pos_ - 1));
                tok.datatype_is_iri = true;
                pos_ = *end + 1;
            } else {
                Token dt = word_or_pname();
                if (dt.kind != Tok::PName) fail("expected datatype after ^^", dt.pos);
                tok.datatype = dt.text;
            }
        }
        return tok;
    }

    Token word_or_pname() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == ':') {
            ++pos_;
            while (pos_ < s_.size() &&
                   (is_name_char(s_[pos_]) || s_[pos_] == '.' || s_[pos_] == '%' || s_[pos_] == ':'))
                ++pos_;
            while (s_[pos_ - 1] == '.') --pos_;   // trailing dots end the statement
            return Token{Tok::PName, std::string(s_.substr(start, pos_ - start)), start};
        }
        return Token{Tok::Word, std::string(s_.substr(start, pos_ - start)), start};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

class Parser {
public:
    Parser(std::string_view text, const PrefixTable& prefixes) : prefixes_(prefixes) {
        tokens_ = Lexer(text).run();
    }

    QueryAst parse() {
        QueryAst ast;
        while (is_word("PREFIX")) prefix_decl();
        expect_word("SELECT");
        if (is_word("DISTINCT")) {
            advance();
            ast.distinct = true;
        }
        if (peek().kind == Tok::Star) {
            advance();
            ast.star = true;
        } else {
            while (peek().kind == Tok::Var || peek().kind == Tok::LParen) {
                if (peek().kind == Tok::Var) {
                    projection_pos_.push_back(peek().pos);
                    ast.projection.emplace_back(Variable{advance().text});
                } else {
                    projection_pos_.push_back(peek().pos);
                    ast.projection.emplace_back(aggregate());
                }
            }
            if (ast.projection.empty()) fail("expected projection after SELECT");
        }
        if (is_word("WHERE")) advance();
        ast.where = group();
        modifiers(ast);
        if (peek().kind != Tok::End) fail("unexpected trailing input");
        validate(ast);
        return ast;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(idx_ + ahead, tokens_.size() - 1)];
    }
    const Token& advance() { return tokens_[std::min(idx_++, tokens_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 0, peek().pos); }
    [[noreturn]] void fail_at(const std::string& message, std::size_t pos) const { throw ParseError(message, 0, pos); }

    bool is_word(std::string_view kw) const { return peek().kind == Tok::Word && upper(peek().text) == kw; }

    void expect_word(std::string_view kw) {
        if (!is_word(kw)) fail("expected " + std::string(kw));
        advance();
    }

    void expect(Tok kind, std::string_view what) {
        if (peek().kind != kind) fail("expected " + std::string(what));
        advance();
    }

    void prefix_decl() {
        advance();
        const Token& name = peek();
        if (name.kind != Tok::PName || name.text.back() != ':') fail("expected prefix name ending in ':'");
        advance();
        const Token& iri = peek();
        if (iri.kind != Tok::IriRef) fail("expected namespace IRI");
        advance();
        local_prefixes_.declare(name.text.substr(0, name.text.size() - 1), iri.text);
    }

    Iri expand(const Token& tok) {
        auto colon = tok.text.find(':');
        std::string prefix = tok.text.substr(0, colon);
        std::string local = tok.text.substr(colon + 1);
        auto ns = local_prefixes_.lookup(prefix);
        if (!ns) ns = prefixes_.lookup(prefix);
        if (!ns) throw PrefixError(prefix, tok.pos);
        try {
            return Iri(*ns + local);
        } catch (const BadIri&) {
            fail_at("malformed IRI from '" + tok.text + "'", tok.pos);
        }
    }

    Iri iri_token(const Token& tok) {
        if (tok.kind == Tok::PName) return expand(tok);
        try {
            return Iri(tok.text);
        } catch (const BadIri&) {
            fail_at("malformed IRI <" + tok.text + ">", tok.pos);
        }
    }

    Literal literal_token(const Token& tok) {
        try {
            switch (tok.kind) {
            case Tok::Integer: return Literal(tok.text, Datatype::Integer);
            case Tok::Decimal: return Literal(tok.text, Datatype::Decimal);
            case Tok::Word: return Literal(tok.text == "true" ? "true" : "false", Datatype::Boolean);
            case Tok::String: {
                if (!tok.datatype) return Literal(tok.text, Datatype::String);
                Iri dt = tok.datatype_is_iri ? iri_token(Token{Tok::IriRef, *tok.datatype, tok.datatype_pos})
                                             : expand(Token{Tok::PName, *tok.datatype, tok.datatype_pos});
                auto known = datatype_from_iri(dt.str());
                if (!known) fail_at("unsupported datatype <" + dt.str() + ">", tok.datatype_pos);
                return Literal(tok.text, *known);
            }
            default: break;
            }
        } catch (const std::invalid_argument& e) {
            fail_at(e.what(), tok.pos);
        }
        fail_at("expected literal", tok.pos);
    }

    bool is_constant_start() const {
        const Token& t = peek();
        return t.kind == Tok::IriRef || t.kind == Tok::PName || t.kind == Tok::String ||
               t.kind == Tok::Integer || t.kind == Tok::Decimal ||
               (t.kind == Tok::Word && (t.text == "true" || t.text == "false"));
    }

    Term constant() {
        const Token& t = advance();
        if (t.kind == Tok::IriRef || t.kind == Tok::PName) return iri_token(t);
        return literal_token(t);
    }

    PatternTerm pattern_term(bool predicate_position) {
        const Token& t = peek();
        if (t.kind == Tok::Var) return Variable{advance().text};
        if (predicate_position && t.kind == Tok::Word && t.text == "a") {
            advance();
            return vocab::rdf_type();
        }
        if (t.kind == Tok::IriRef || t.kind == Tok::PName) return iri_token(advance());
        if (predicate_position) fail("predicate must be a variable or IRI");
        if (is_constant_start()) return literal_token(advance());
        fail("expected variable, IRI or literal");
    }

    CountAggregate aggregate() {
        expect(Tok::LParen, "'('");
        expect_word("COUNT");
        expect(Tok::LParen, "'(' after COUNT");
        CountAggregate agg;
        if (peek().kind == Tok::Star) {
            advance();
        } else if (peek().kind == Tok::Var) {
            count_arg_pos_.push_back(peek().pos);
            agg.argument = Variable{advance().text};
        } else {
            fail("expected variable or '*' in COUNT");
        }
        expect(Tok::RParen, "')'");
        expect_word("AS");
        if (peek().kind != Tok::Var) fail("expected alias variable after AS");
        agg.alias = Variable{advance().text};
        expect(Tok::RParen, "')'");
        return agg;
    }

    GroupPattern group() {
        std::size_t open = peek().pos;
        expect(Tok::LBrace, "'{'");
        GroupPattern g;
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::RBrace) {
                advance();
                break;
            }
            if (t.kind == Tok::End) fail("unterminated group");
            if (t.kind == Tok::Dot) {
                advance();
                continue;
            }
            if (is_word("FILTER")) {
                advance();
                g.filters.push_back(filter());
                continue;
            }
            if (t.kind == Tok::LBrace) {
                UnionPattern u;
                u.branches.push_back(group());
                while (is_word("UNION")) {
                    advance();
                    if (peek().kind != Tok::LBrace) fail("expected '{' after UNION");
                    u.branches.push_back(group());
                }
                g.unions.push_back(std::move(u));
                continue;
            }
            triples_block(g);
        }
        if (g.triples.empty() && g.unions.empty()) fail_at("empty group pattern", open);
        return g;
    }

    void triples_block(GroupPattern& g) {
        PatternTerm subject = pattern_term(false);
        if (std::holds_alternative<Literal>(subject)) fail("literal in subject position");
        for (;;) {
            PatternTerm predicate = pattern_term(true);
            for (;;) {
                PatternTerm object = pattern_term(false);
                g.triples.push_back(TriplePattern{subject, predicate, std::move(object)});
                if (peek().kind != Tok::Comma) break;
                advance();
            }
            if (peek().kind != Tok::Semicolon) break;
            advance();
            if (peek().kind == Tok::Dot || peek().kind == Tok::RBrace) break;
        }
        if (peek().kind == Tok::Dot) advance();
        else if (peek().kind != Tok::RBrace && !is_word("FILTER") && peek().kind != Tok::LBrace)
            fail("expected '.' after triple pattern");
    }

    FilterExpr filter() {
        if (is_word("REGEX")) return regex_call();
        if (peek().kind != Tok::LParen) fail("expected '(' or regex after FILTER");
        return constraint();
    }

    FilterExpr constraint() {
        expect(Tok::LParen, "'('");
        FilterExpr expr = [&]() -> FilterExpr {
            if (is_word("REGEX")) return regex_call();
            if (peek().kind == Tok::LParen) return constraint();
            return comparison();
        }();
        expect(Tok::RParen, "')'");
        return expr;
    }

    static CompareOp parse_op(const std::string& op) {
        if (op == "<") return CompareOp::Lt;
        if (op == ">") return CompareOp::Gt;
        if (op == "<=") return CompareOp::Le;
        if (op == ">=") return CompareOp::Ge;
        if (op == "=") return CompareOp::Eq;
        return CompareOp::Ne;
    }

    static CompareOp flip(CompareOp op) {
        switch (op) {
        case CompareOp::Lt: return CompareOp::Gt;
        case CompareOp::Gt: return CompareOp::Lt;
        case CompareOp::Le: return CompareOp::Ge;
        case CompareOp::Ge: return CompareOp::Le;
        default: return op;
        }
    }

    FilterExpr comparison() {
        std::size_t start = peek().pos;
        if (peek().kind == Tok::Var) {
            filter_var_pos_.push_back(peek().pos);
            Variable v{advance().text};
            if (peek().kind != Tok::Op) fail("expected comparison operator");
            CompareOp op = parse_op(advance().text);
            if (peek().kind == Tok::Var) fail("comparison between two variables is not supported");
            if (!is_constant_start()) fail("expected constant");
            return Comparison{std::move(v), op, constant()};
        }
        if (!is_constant_start()) fail_at("expected variable or constant in comparison", start);
        Term c = constant();
        if (peek().kind != Tok::Op) fail("expected comparison operator");
        CompareOp op = parse_op(advance().text);
        if (peek().kind != Tok::Var) fail("comparison must relate a variable and a constant");
        filter_var_pos_.push_back(peek().pos);
        return Comparison{Variable{advance().text}, flip(op), std::move(c)};
    }

    FilterExpr regex_call() {
        advance();
        expect(Tok::LParen, "'(' after regex");
        if (peek().kind != Tok::Var) fail("regex expects a variable as first argument");
        filter_var_pos_.push_back(peek().pos);
        RegexFilter r;
        r.variable = Variable{advance().text};
        expect(Tok::Comma, "','");
        if (peek().kind != Tok::String || peek().datatype) fail("regex pattern must be a plain string");
        std::size_t pattern_pos = peek().pos;
        r.pattern = advance().text;
        if (peek().kind == Tok::Comma) {
            advance();
            if (peek().kind != Tok::String) fail("regex flags must be a string");
            const Token& flags = advance();
            if (flags.text == "i") r.case_insensitive = true;
            else if (!flags.text.empty()) fail_at("unsupported regex flags '" + flags.text + "'", flags.pos);
        }
        expect(Tok::RParen, "')'");
        try {
            std::regex(r.pattern, std::regex::ECMAScript);
        } catch (const std::regex_error&) {
            fail_at("invalid regular expression", pattern_pos);
        }
        return r;
    }

    std::size_t positive_integer(bool allow_zero) {
        const Token& t = peek();
        if (t.kind != Tok::Integer || t.text[0] == '-' || t.text[0] == '+') fail("expected non-negative integer");
        advance();
        std::size_t value = 0;
        try {
            value = static_cast<std::size_t>(std::stoull(t.text));
        } catch (const std::exception&) {
            fail_at("integer out of range", t.pos);
        }
        if (!allow_zero && value == 0) fail_at("LIMIT must be positive", t.pos);
        return value;
    }

    void modifiers(QueryAst& ast) {
        if (is_word("GROUP")) {
            advance();
            expect_word("BY");
            while (peek().kind == Tok::Var) {
                group_pos_.push_back(peek().pos);
                ast.group_by.push_back(Variable{advance().text});
            }
            if (ast.group_by.empty()) fail("expected variable after GROUP BY");
        }
        if (is_word("ORDER")) {
            advance();
            expect_word("BY");
            for (;;) {
                if (peek().kind == Tok::Var) {
                    order_pos_.push_back(peek().pos);
                    ast.order_by.push_back(OrderKey{Variable{advance().text}, false});
                } else if (is_word("ASC") || is_word("DESC")) {
                    bool desc = upper(advance().text) == "DESC";
                    expect(Tok::LParen, "'('");
                    if (peek().kind != Tok::Var) fail("expected variable in ORDER BY");
                    order_pos_.push_back(peek().pos);
                    ast.order_by.push_back(OrderKey{Variable{advance().text}, desc});
                    expect(Tok::RParen, "')'");
                } else {
                    break;
                }
            }
            if (ast.order_by.empty()) fail("expected sort key after ORDER BY");
        }
        for (int i = 0; i < 2; ++i) {
            if (is_word("LIMIT") && !ast.limit) {
                advance();
                ast.limit = positive_integer(false);
            } else if (is_word("OFFSET") && !ast.offset) {
                advance();
                ast.offset = positive_integer(true);
            }
        }
    }

    void validate(const QueryAst& ast) const {
        auto vars = pattern_variables(ast.where);
        auto in_where = [&](const Variable& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
        bool grouped = ast.is_grouped();
        if (ast.star && grouped) fail_at("SELECT * cannot be combined with grouping", 0);

        std::vector<std::string> seen;
        std::size_t count_idx = 0;
        for (std::size_t i = 0; i < ast.projection.size(); ++i) {
            const auto& item = ast.projection[i];
            std::size_t pos = projection_pos_[i];
            std::string name;
            if (const auto* v = std::get_if<Variable>(&item)) {
                name = v->name;
                if (!in_where(*v)) fail_at("projected variable ?" + name + " does not occur in WHERE", pos);
                if (grouped && std::find(ast.group_by.begin(), ast.group_by.end(), *v) == ast.group_by.end())
                    fail_at("projected variable ?" + name + " is not in GROUP BY", pos);
            } else {
                const auto& agg = std::get<CountAggregate>(item);
                name = agg.alias.name;
                if (in_where(agg.alias)) fail_at("aggregate alias ?" + name + " is not a fresh variable", pos);
                if (agg.argument) {
                    std::size_t arg_pos = count_arg_pos_[count_idx++];
                    if (!in_where(*agg.argument))
                        fail_at("COUNT argument ?" + agg.argument->name + " does not occur in WHERE", arg_pos);
                }
            }
            if (std::find(seen.begin(), seen.end(), name) != seen.end())
                fail_at("duplicate projection ?" + name, pos);
            seen.push_back(name);
        }
        for (std::size_t i = 0; i < ast.group_by.size(); ++i) {
            if (!in_where(ast.group_by[i]))
                fail_at("GROUP BY variable ?" + ast.group_by[i].name + " does not occur in WHERE", group_pos_[i]);
        }
        auto header = result_header(ast);
        for (std::size_t i = 0; i < ast.order_by.size(); ++i) {
            const auto& name = ast.order_by[i].variable.name;
            if (std::find(header.begin(), header.end(), name) == header.end())
                fail_at("ORDER BY variable ?" + name + " is not in the result", order_pos_[i]);
        }
    }

    const PrefixTable& prefixes_;
    PrefixTable local_prefixes_;
    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
    std::vector<std::size_t> projection_pos_;
    std::vector<std::size_t> count_arg_pos_;
    std::vector<std::size_t> filter_var_pos_;
    std::vector<std::size_t> group_pos_;
    std::vector<std::size_t> order_pos_;
};

} // namespace

QueryAst parse_query(std::string_view text, const PrefixTable& prefixes) {
    return Parser(text, prefixes).parse();
}

} // namespace chemlink::sparql
