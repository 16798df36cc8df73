#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chemlink {

// Root of every error the library throws. `code()` is a stable short name
// used by the portal's JSON error bodies.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class GraphUnknown : public Error {
public:
    explicit GraphUnknown(const std::string& graph)
        : Error("GraphUnknown", "graph is not registered: " + graph), graph_(graph) {}
    const std::string& graph() const noexcept { return graph_; }

private:
    std::string graph_;
};

class BadIri : public Error {
public:
    explicit BadIri(const std::string& text) : Error("BadIri", "malformed IRI: '" + text + "'") {}
};

// Syntax error in N-Triples, query text, manifests or descriptors.
// `line` is 1-based (0 when not line oriented); `position` is a 0-based
// character offset (npos when not applicable).
class ParseError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    ParseError(const std::string& message, std::size_t line, std::size_t position = npos)
        : Error("ParseError", decorate(message, line, position)),
          line_(line), position_(position) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t position() const noexcept { return position_; }

private:
    static std::string decorate(const std::string& message, std::size_t line, std::size_t position) {
        std::string out = message;
        if (line != 0) out += " (line " + std::to_string(line) + ")";
        if (position != npos) out += " (position " + std::to_string(position) + ")";
        return out;
    }

    std::size_t line_;
    std::size_t position_;
};

class PrefixError : public Error {
public:
    PrefixError(const std::string& prefix, std::size_t position)
        : Error("PrefixError", "unknown prefix '" + prefix + ":' at position " + std::to_string(position)),
          prefix_(prefix), position_(position) {}
    const std::string& prefix() const noexcept { return prefix_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string prefix_;
    std::size_t position_;
};

class EvalError : public Error {
public:
    explicit EvalError(const std::string& message) : Error("EvalError", message) {}
};

class AffinityError : public Error {
public:
    explicit AffinityError(const std::string& text)
        : Error("AffinityError", "no parsable affinity in '" + text + "'"), text_(text) {}
    const std::string& text() const noexcept { return text_; }

private:
    std::string text_;
};

class BadId : public Error {
public:
    explicit BadId(const std::string& message) : Error("BadId", message) {}
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message) : Error("SchemaError", message) {}
};

class ClassError : public Error {
public:
    explicit ClassError(const std::string& message) : Error("ClassError", message) {}
};

class SourceError : public Error {
public:
    explicit SourceError(const std::string& name) : Error("SourceError", "unknown source: " + name) {}
};

class DictConflict : public Error {
public:
    explicit DictConflict(const std::string& term)
        : Error("DictConflict", "term maps to more than one entity: '" + term + "'"), term_(term) {}
    const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("ConfigError", message) {}
};

} // namespace chemlink
