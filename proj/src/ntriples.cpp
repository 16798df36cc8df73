#include "chemlink/ntriples.hpp"

#include "chemlink/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace chemlink {

namespace {

class LineParser {
public:
    LineParser(std::string_view line, std::size_t line_no) : s_(line), line_(line_no) {}

    Statement parse() {
        skip_ws();
        Iri subject = parse_subject();
        skip_ws();
        Iri predicate = parse_iri();
        skip_ws();
        Term object = parse_object();
        skip_ws();
        if (!consume('.')) fail("expected '.' after object");
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] != '#') fail("unexpected trailing content");
        return Statement{std::move(subject), std::move(predicate), std::move(object)};
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool consume(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Iri parse_subject() {
        if (pos_ + 1 < s_.size() && s_[pos_] == '_' && s_[pos_ + 1] == ':') fail("blank nodes are not supported");
        return parse_iri();
    }

    Iri parse_iri() {
        if (!consume('<')) fail("expected '<'");
        auto end = s_.find('>', pos_);
        if (end == std::string_view::npos) fail("unterminated IRI");
        std::string text(s_.substr(pos_, end - pos_));
        if (!is_valid_iri(text)) fail("malformed IRI '" + text + "'");
        pos_ = end + 1;
        return Iri(std::move(text));
    }

    Term parse_object() {
        if (pos_ < s_.size() && s_[pos_] == '"') return parse_literal();
        if (pos_ + 1 < s_.size() && s_[pos_] == '_' && s_[pos_ + 1] == ':') fail("blank nodes are not supported");
        return parse_iri();
    }

    Term parse_literal() {
        consume('"');
        std::string lexical;
        for (;;) {
            if (pos_ >= s_.size()) fail("unterminated literal");
            char c = s_[pos_++];
            if (c == '"') break;
            if (c != '\\') {
                lexical += c;
                continue;
            }
            if (pos_ >= s_.size()) fail("dangling escape");
            char e = s_[pos_++];
            switch (e) {
            case 't': lexical += '\t'; break;
            case 'n': lexical += '\n'; break;
            case 'r': lexical += '\r'; break;
            case 'b': lexical += '\b'; break;
            case 'f': lexical += '\f'; break;
            case '"': lexical += '"'; break;
            case '\'': lexical += '\''; break;
            case '\\': lexical += '\\'; break;
            case 'u': append_utf8(parse_hex(4), lexical); break;
            case 'U': append_utf8(parse_hex(8), lexical); break;
            default: fail(std::string("unknown escape \\") + e);
            }
        }
        Datatype dt = Datatype::String;
        if (pos_ < s_.size() && s_[pos_] == '@') fail("language tags are not supported");
        if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '^') {
            pos_ += 2;
            Iri dt_iri = parse_iri();
            auto known = datatype_from_iri(dt_iri.str());
            if (!known) fail("unsupported datatype <" + dt_iri.str() + ">");
            dt = *known;
        }
        try {
            return Literal(std::move(lexical), dt);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    std::uint32_t parse_hex(std::size_t digits) {
        if (pos_ + digits > s_.size()) fail("truncated unicode escape");
        std::uint32_t cp = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            char c = s_[pos_++];
            cp <<= 4;
            if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
            else fail("bad hex digit in unicode escape");
        }
        return cp;
    }

    static void append_utf8(std::uint32_t cp, std::string& out) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

} // namespace

std::vector<Statement> parse_ntriples(std::string_view document) {
    std::vector<Statement> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= document.size()) {
        auto end = document.find('\n', start);
        if (end == std::string_view::npos) end = document.size();
        std::string_view line = document.substr(start, end - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] != '#')
            out.push_back(LineParser(line, line_no).parse());
        if (end == document.size()) break;
        start = end + 1;
    }
    return out;
}

std::string serialize_ntriples(std::vector<Statement> statements) {
    std::sort(statements.begin(), statements.end());
    statements.erase(std::unique(statements.begin(), statements.end()), statements.end());
    std::string out;
    for (const auto& st : statements) {
        out += to_ntriples(st.subject);
        out += ' ';
        out += to_ntriples(st.predicate);
        out += ' ';
        out += to_ntriples(st.object);
        out += " .\n";
    }
    return out;
}

std::string export_graph(const Store& store, const std::optional<Iri>& graph) {
    MatchPattern pattern;
    pattern.graph = graph;
    std::vector<Statement> statements;
    for (auto& t : store.match(pattern))
        statements.push_back(Statement{std::move(t.subject), std::move(t.predicate), std::move(t.object)});
    return serialize_ntriples(std::move(statements));
}

std::size_t import_graph(Store& store, std::string_view document, const Iri& graph) {
    if (!store.has_graph(graph)) throw GraphUnknown(graph.str());
    auto statements = parse_ntriples(document);
    std::size_t added = 0;
    for (auto& st : statements) {
        if (store.insert(Triple{std::move(st.subject), std::move(st.predicate), std::move(st.object), graph}))
            ++added;
    }
    return added;
}

} // namespace chemlink
