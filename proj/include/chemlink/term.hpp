#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace chemlink {

// Absolute IRI. Construction validates: non-empty, has a scheme, contains no
// whitespace or characters that cannot appear inside <...> in N-Triples.
class Iri {
public:
    explicit Iri(std::string value);

    const std::string& str() const noexcept { return value_; }

    friend auto operator<=>(const Iri&, const Iri&) = default;
    friend bool operator==(const Iri&, const Iri&) = default;

private:
    std::string value_;
};

bool is_valid_iri(std::string_view text) noexcept;

enum class Datatype : std::uint8_t { String, Integer, Decimal, Boolean };

std::string_view datatype_name(Datatype dt) noexcept;       // "string", "integer", ...
std::string_view datatype_iri(Datatype dt) noexcept;        // xsd IRI
std::optional<Datatype> datatype_from_iri(std::string_view iri) noexcept;
std::optional<Datatype> datatype_from_name(std::string_view name) noexcept;

class Literal {
public:
    // Throws std::invalid_argument when the lexical form does not fit the
    // datatype; callers translate it into their own error type.
    Literal(std::string lexical, Datatype datatype);

    static Literal string(std::string value) { return Literal(std::move(value), Datatype::String); }
    static Literal integer(std::int64_t value) { return Literal(std::to_string(value), Datatype::Integer); }
    static Literal boolean(bool value) { return Literal(value ? "true" : "false", Datatype::Boolean); }

    const std::string& lexical() const noexcept { return lexical_; }
    Datatype datatype() const noexcept { return datatype_; }

    bool is_numeric() const noexcept {
        return datatype_ == Datatype::Integer || datatype_ == Datatype::Decimal;
    }
    // Numeric value of integer/decimal literals.
    std::optional<long double> numeric_value() const noexcept;
    // Truth value of boolean literals.
    std::optional<bool> boolean_value() const noexcept;

    friend auto operator<=>(const Literal&, const Literal&) = default;
    friend bool operator==(const Literal&, const Literal&) = default;

private:
    std::string lexical_;
    Datatype datatype_;
};

bool lexical_fits(std::string_view lexical, Datatype dt) noexcept;

// RDF term. Ordering is structural: every IRI sorts before every literal.
using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) noexcept { return std::holds_alternative<Iri>(t); }
inline bool is_literal(const Term& t) noexcept { return std::holds_alternative<Literal>(t); }

// IRI text or literal lexical form.
const std::string& display_value(const Term& t) noexcept;

// N-Triples rendering: <iri> or "escaped"^^<datatype>.
std::string to_ntriples(const Term& t);
std::string escape_literal(std::string_view text);

// Last path segment (after '/', '#' or ':') with percent-escapes decoded.
std::string local_name(const Iri& iri);

std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);

} // namespace chemlink

template <>
struct std::hash<chemlink::Iri> {
    std::size_t operator()(const chemlink::Iri& iri) const noexcept {
        return std::hash<std::string>{}(iri.str());
    }
};

template <>
struct std::hash<chemlink::Literal> {
    std::size_t operator()(const chemlink::Literal& lit) const noexcept {
        return std::hash<std::string>{}(lit.lexical()) * 31u + static_cast<std::size_t>(lit.datatype());
    }
};
