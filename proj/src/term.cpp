#include "chemlink/term.hpp"

#include "chemlink/error.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace chemlink {

namespace {

constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

bool is_valid_iri(std::string_view text) noexcept {
    if (text.empty()) return false;
    for (unsigned char c : text) {
        if (c <= 0x20) return false;
        switch (c) {
        case '<': case '>': case '"': case '{': case '}':
        case '|': case '^': case '`': case '\\':
            return false;
        default:
            break;
        }
    }
    // scheme ":" with scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )
    auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
    for (std::size_t i = 1; i < colon; ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return colon + 1 < text.size();
}

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!is_valid_iri(value_)) throw BadIri(value_);
}

std::string_view datatype_name(Datatype dt) noexcept {
    switch (dt) {
    case Datatype::String: return "string";
    case Datatype::Integer: return "integer";
    case Datatype::Decimal: return "decimal";
    case Datatype::Boolean: return "boolean";
    }
    return "string";
}

std::string_view datatype_iri(Datatype dt) noexcept {
    switch (dt) {
    case Datatype::String: return "http://www.w3.org/2001/XMLSchema#string";
    case Datatype::Integer: return "http://www.w3.org/2001/XMLSchema#integer";
    case Datatype::Decimal: return "http://www.w3.org/2001/XMLSchema#decimal";
    case Datatype::Boolean: return "http://www.w3.org/2001/XMLSchema#boolean";
    }
    return "http://www.w3.org/2001/XMLSchema#string";
}

std::optional<Datatype> datatype_from_iri(std::string_view iri) noexcept {
    if (iri.substr(0, kXsd.size()) != kXsd) return std::nullopt;
    return datatype_from_name(iri.substr(kXsd.size()));
}

std::optional<Datatype> datatype_from_name(std::string_view name) noexcept {
    if (name == "string") return Datatype::String;
    if (name == "integer") return Datatype::Integer;
    if (name == "decimal") return Datatype::Decimal;
    if (name == "boolean") return Datatype::Boolean;
    return std::nullopt;
}

bool lexical_fits(std::string_view lex, Datatype dt) noexcept {
    switch (dt) {
    case Datatype::String:
        return true;
    case Datatype::Boolean:
        return lex == "true" || lex == "false" || lex == "1" || lex == "0";
    case Datatype::Integer: {
        std::size_t i = 0;
        if (i < lex.size() && (lex[i] == '+' || lex[i] == '-')) ++i;
        if (i == lex.size()) return false;
        for (; i < lex.size(); ++i)
            if (!is_digit(lex[i])) return false;
        return true;
    }
    case Datatype::Decimal: {
        std::size_t i = 0;
        if (i < lex.size() && (lex[i] == '+' || lex[i] == '-')) ++i;
        std::size_t int_digits = 0, frac_digits = 0;
        while (i < lex.size() && is_digit(lex[i])) { ++i; ++int_digits; }
        if (i < lex.size() && lex[i] == '.') {
            ++i;
            while (i < lex.size() && is_digit(lex[i])) { ++i; ++frac_digits; }
        }
        return i == lex.size() && int_digits + frac_digits > 0;
    }
    }
    return false;
}

Literal::Literal(std::string lexical, Datatype datatype)
    : lexical_(std::move(lexical)), datatype_(datatype) {
    if (!lexical_fits(lexical_, datatype_))
        throw std::invalid_argument("'" + lexical_ + "' is not a valid " +
                                    std::string(datatype_name(datatype_)) + " literal");
}

std::optional<long double> Literal::numeric_value() const noexcept {
    if (!is_numeric()) return std::nullopt;
    return std::strtold(lexical_.c_str(), nullptr);
}

std::optional<bool> Literal::boolean_value() const noexcept {
    if (datatype_ != Datatype::Boolean) return std::nullopt;
    return lexical_ == "true" || lexical_ == "1";
}

const std::string& display_value(const Term& t) noexcept {
    if (const auto* iri = std::get_if<Iri>(&t)) return iri->str();
    return std::get<Literal>(t).lexical();
}

std::string escape_literal(std::string_view text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c; break;
        }
    }
    return out;
}

std::string to_ntriples(const Term& t) {
    if (const auto* iri = std::get_if<Iri>(&t)) return "<" + iri->str() + ">";
    const auto& lit = std::get<Literal>(t);
    return "\"" + escape_literal(lit.lexical()) + "\"^^<" + std::string(datatype_iri(lit.datatype())) + ">";
}

std::string local_name(const Iri& iri) {
    const std::string& s = iri.str();
    auto cut = s.find_last_of("/#");
    if (cut == std::string::npos) cut = s.find(':');
    return percent_decode(cut == std::string::npos ? s : s.substr(cut + 1));
}

std::string percent_encode(std::string_view text) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0xF];
        }
    }
    return out;
}

std::string percent_decode(std::string_view text) {
    auto hex = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '%' && i + 2 < text.size()) {
            int hi = hex(text[i + 1]), lo = hex(text[i + 2]);
            if (hi >= 0 && lo >= 0) {
                out += static_cast<char>(hi * 16 + lo);
                i += 2;
                continue;
            }
        }
        out += text[i];
    }
    return out;
}

} // namespace chemlink
