#include "chemlink/ingest.hpp"

#include "chemlink/error.hpp"
#include "chemlink/store_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace chemlink::ingest {

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

std::string_view op_text(AffinityOp op) noexcept {
    switch (op) {
    case AffinityOp::Lt: return "<";
    case AffinityOp::Le: return "<=";
    case AffinityOp::Eq: return "=";
    case AffinityOp::Gt: return ">";
    case AffinityOp::Ge: return ">=";
    }
    return "=";
}

Affinity parse_affinity(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw AffinityError(std::string(text));
    Affinity a;
    if (s.substr(0, 2) == "<=") { a.op = AffinityOp::Le; s.remove_prefix(2); }
    else if (s.substr(0, 2) == ">=") { a.op = AffinityOp::Ge; s.remove_prefix(2); }
    else if (s[0] == '<') { a.op = AffinityOp::Lt; s.remove_prefix(1); }
    else if (s[0] == '>') { a.op = AffinityOp::Gt; s.remove_prefix(1); }
    else if (s[0] == '=') { a.op = AffinityOp::Eq; s.remove_prefix(1); }
    s = trim(s);

    std::size_t i = 0, digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    }
    if (digits == 0) throw AffinityError(std::string(text));
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + i, a.value);
    if (ec != std::errc() || ptr != s.data() + i || !std::isfinite(a.value))
        throw AffinityError(std::string(text));

    std::string_view unit = trim(s.substr(i));
    if (!unit.empty()) {
        if (!std::all_of(unit.begin(), unit.end(), [](unsigned char c) { return std::isalpha(c); }))
            throw AffinityError(std::string(text));
        a.unit = lower(unit);
    }
    return a;
}

std::string decimal_text(double value) {
    std::array<char, 512> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
    if (ec != std::errc()) return "0";
    return std::string(buf.data(), ptr);
}

std::string format_affinity(const Affinity& a) {
    std::string out;
    if (a.op != AffinityOp::Eq) out += op_text(a.op);
    out += decimal_text(a.value);
    if (a.unit != "nm") out += " " + a.unit;
    return out;
}

namespace {

constexpr std::array<std::pair<IdKind, std::string_view>, 10> kKindNames{{
    {IdKind::Cid, "cid"},
    {IdKind::Uniprot, "uniprot"},
    {IdKind::Gi, "gi"},
    {IdKind::GeneSymbol, "gene-symbol"},
    {IdKind::Pdb, "pdb"},
    {IdKind::DrugLocal, "drug-local"},
    {IdKind::DiseaseName, "disease-name"},
    {IdKind::SideEffectName, "side-effect-name"},
    {IdKind::Pathway, "pathway"},
    {IdKind::Record, "record"},
}};

} // namespace

std::string_view id_kind_name(IdKind kind) noexcept {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "record";
}

std::optional<IdKind> id_kind_from_name(std::string_view name) noexcept {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

Iri local_iri(IdKind kind, std::string_view raw, std::string_view scope) {
    std::string_view value = trim(raw);
    if (value.empty()) throw BadId("empty " + std::string(id_kind_name(kind)) + " identifier");
    auto ns = [&](std::string_view base, std::string_view v) {
        return Iri(std::string(base) + percent_encode(v));
    };
    switch (kind) {
    case IdKind::Cid: {
        std::string_view digits = value;
        if (digits.size() > 3 && lower(digits.substr(0, 3)) == "cid") digits.remove_prefix(3);
        if (!all_digits(digits)) throw BadId("CID is not numeric: '" + std::string(value) + "'");
        while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
        return ns(vocab::kCompoundNs, digits);
    }
    case IdKind::Uniprot: return ns(vocab::kUniprotNs, value);
    case IdKind::Gi: return ns(vocab::kGiNs, value);
    case IdKind::GeneSymbol: return ns(vocab::kGeneNs, value);
    case IdKind::Pdb: return ns(vocab::kPdbNs, value);
    case IdKind::DrugLocal: return ns(vocab::kDrugNs, value);
    case IdKind::DiseaseName: return ns(vocab::kDiseaseNs, lower(value));
    case IdKind::SideEffectName: return ns(vocab::kSideEffectNs, lower(value));
    case IdKind::Pathway: return ns(vocab::kPathwayNs, value);
    case IdKind::Record:
        return Iri(std::string(vocab::kRecordBase) + percent_encode(scope.empty() ? "local" : scope) + "/" +
                   percent_encode(value));
    }
    throw BadId("unknown identifier kind");
}

namespace {

// Smallest UniProt IRI reachable through mapping records whose `key`
// predicate points at `local`.
std::optional<Iri> mapped_uniprot(const Store& store, std::string_view table, std::string_view key,
                                  const Iri& local) {
    Iri key_pred = vocab::term(table, key);
    Iri target_pred = vocab::term(table, "uniprot");
    std::optional<Iri> best;
    for (const auto& rec : store.match({std::nullopt, key_pred, Term(local), std::nullopt})) {
        for (const auto& m : store.match({rec.subject, target_pred, std::nullopt, std::nullopt})) {
            const auto* iri = std::get_if<Iri>(&m.object);
            if (!iri) continue;
            if (!best || *iri < *best) best = *iri;
        }
    }
    return best;
}

} // namespace

MappedId map_identifier(const Store& store, IdKind kind, std::string_view value, std::string_view scope) {
    Iri local = local_iri(kind, value, scope);
    std::optional<Iri> hub;
    if (kind == IdKind::Gi) hub = mapped_uniprot(store, "gi2uniprot", "gi", local);
    else if (kind == IdKind::GeneSymbol) hub = mapped_uniprot(store, "gene2uniprot", "gene", local);
    if (hub && *hub != local) return {*hub, local};
    return {local, std::nullopt};
}

void DatasetManifest::validate() const {
    provenance.validate();
    std::size_t subjects = 0;
    for (const auto& c : columns) {
        if (c.role == ColumnRole::SubjectId) ++subjects;
        else if (!c.predicate) throw ConfigError("column '" + c.column + "' has no predicate");
    }
    if (subjects != 1)
        throw ConfigError("manifest needs exactly one subject-id column, found " + std::to_string(subjects));
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::optional<ColumnRole> role_from_name(std::string_view s) {
    if (s == "subject-id") return ColumnRole::SubjectId;
    if (s == "object-id") return ColumnRole::ObjectId;
    if (s == "literal") return ColumnRole::Literal;
    if (s == "affinity") return ColumnRole::Affinity;
    return std::nullopt;
}

} // namespace

DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                               const PrefixTable& prefixes) {
    std::optional<Iri> graph;
    std::optional<DomainTag> domain;
    ProvenanceRecord prov;
    std::vector<ColumnSpec> columns;
    bool normalize = true;
    std::filesystem::path source;
    bool in_columns = false;

    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            throw ConfigError("manifest line " + std::to_string(line_no) + ": " + msg);
        };
        if (line == "[columns]") {
            in_columns = true;
            continue;
        }
        if (!in_columns) {
            auto eq = line.find('=');
            if (eq == std::string_view::npos) fail("expected key = value");
            std::string key(trim(line.substr(0, eq)));
            std::string value(trim(line.substr(eq + 1)));
            if (key == "graph") {
                graph = is_valid_iri(value) && value.find("://") != std::string::npos ? Iri(value)
                                                                                      : vocab::graph_iri(value);
            } else if (key == "domain") {
                domain = domain_from_name(value);
                if (!domain) fail("unknown domain '" + value + "'");
            } else if (key == "what") prov.what = value;
            else if (key == "when") prov.when = value;
            else if (key == "where") prov.where = value;
            else if (key == "why") prov.why = value;
            else if (key == "who") prov.who = value;
            else if (key == "source") source = base_dir / value;
            else if (key == "normalize") {
                if (value != "true" && value != "false") fail("normalize must be true or false");
                normalize = value == "true";
            } else fail("unknown key '" + key + "'");
            continue;
        }

        auto toks = split_ws(line);
        if (toks.size() < 3) fail("column line needs: column predicate role [kind]");
        ColumnSpec spec;
        spec.column = toks[0];
        auto role = role_from_name(toks[2]);
        if (!role) fail("unknown role '" + toks[2] + "'");
        spec.role = *role;
        try {
            if (toks[1] != "-") spec.predicate = parse_iri_ref(toks[1], prefixes);
        } catch (const Error& e) {
            fail(e.what());
        }
        switch (spec.role) {
        case ColumnRole::SubjectId:
        case ColumnRole::ObjectId: {
            if (toks.size() < 4) fail("id column needs a kind");
            std::string kind_text = toks[3];
            if (kind_text.rfind("record:", 0) == 0) {
                spec.scope = kind_text.substr(7);
                kind_text = "record";
                if (spec.scope.empty()) fail("record scope is empty");
            }
            auto kind = id_kind_from_name(kind_text);
            if (!kind) fail("unknown id kind '" + toks[3] + "'");
            spec.kind = *kind;
            if (toks.size() >= 5) {
                auto dt = datatype_from_name(toks[4]);
                if (!dt) fail("unknown datatype '" + toks[4] + "'");
                spec.datatype = *dt;
            }
            break;
        }
        case ColumnRole::Literal:
            if (toks.size() >= 4) {
                auto dt = datatype_from_name(toks[3]);
                if (!dt) fail("unknown datatype '" + toks[3] + "'");
                spec.datatype = *dt;
            }
            break;
        case ColumnRole::Affinity:
            break;
        }
        columns.push_back(std::move(spec));
    }

    if (!graph) throw ConfigError("manifest has no graph");
    if (!domain) throw ConfigError("manifest has no domain");
    DatasetManifest m{*graph, *domain, prov, std::move(columns), normalize, source};
    m.validate();
    return m;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    return parse_manifest(read_file(path), path.parent_path());
}

Table parse_tsv(std::string_view text) {
    Table t;
    bool header = true;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) {
            if (end == text.size()) break;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t f = 0;
        while (true) {
            auto tab = line.find('\t', f);
            fields.emplace_back(line.substr(f, tab == std::string_view::npos ? std::string_view::npos : tab - f));
            if (tab == std::string_view::npos) break;
            f = tab + 1;
        }
        if (header) {
            for (auto& h : fields) h = std::string(trim(h));
            t.header = std::move(fields);
            header = false;
        } else {
            t.rows.push_back(std::move(fields));
        }
        if (end == text.size()) break;
    }
    return t;
}

std::string LoadReport::to_json() const {
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& e : errors) errs.push_back({{"row", e.row}, {"message", e.message}});
    return nlohmann::json{{"graph", graph.str()},   {"rows", rows},       {"emitted", emitted},
                          {"added", added},         {"skipped", skipped}, {"errors", errs}}
        .dump();
}

std::string LoadReport::summary() const {
    std::ostringstream out;
    out << vocab::graph_name(graph) << ": " << rows << " rows, " << emitted << " subjects, " << added
        << " triples added, " << skipped << " skipped";
    for (const auto& e : errors) out << "\n  row " << e.row << ": " << e.message;
    return out.str();
}

LoadReport load_dataset(Store& store, const DatasetManifest& manifest, const Table& table) {
    manifest.validate();
    std::vector<std::size_t> index;
    for (const auto& c : manifest.columns) {
        auto it = std::find(table.header.begin(), table.header.end(), c.column);
        if (it == table.header.end()) throw ConfigError("column '" + c.column + "' not in source header");
        index.push_back(static_cast<std::size_t>(it - table.header.begin()));
    }

    if (!store.has_graph(manifest.graph)) store.register_graph({manifest.graph, manifest.domain, manifest.provenance});
    const Iri& g = manifest.graph;
    const std::string scope = vocab::graph_name(g);

    LoadReport report{g, table.rows.size(), 0, 0, 0, {}};
    const auto& p = manifest.provenance;
    for (const auto& [pred, value] : {std::pair{vocab::prov_what(), p.what}, {vocab::prov_when(), p.when},
                                      {vocab::prov_where(), p.where}, {vocab::prov_why(), p.why},
                                      {vocab::prov_who(), p.who}}) {
        if (store.insert({g, pred, Literal::string(value), g})) ++report.added;
    }

    auto map_id = [&](const ColumnSpec& spec, const std::string& value, std::vector<Triple>& out) {
        const std::string& sc = spec.scope.empty() ? scope : spec.scope;
        if (!manifest.normalize) return local_iri(spec.kind, value, sc);
        MappedId m = map_identifier(store, spec.kind, value, sc);
        if (m.local) out.push_back({*m.local, vocab::same_as(), m.iri, g});
        return m.iri;
    };

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::vector<Triple> triples;
        try {
            if (row.size() != table.header.size())
                throw ConfigError("expected " + std::to_string(table.header.size()) + " fields, found " +
                                  std::to_string(row.size()));
            std::optional<Iri> subject;
            for (std::size_t c = 0; c < manifest.columns.size(); ++c) {
                const auto& spec = manifest.columns[c];
                if (spec.role != ColumnRole::SubjectId) continue;
                std::string value(trim(row[index[c]]));
                if (value.empty()) throw BadId("empty subject id in column '" + spec.column + "'");
                subject = map_id(spec, value, triples);
                if (spec.predicate) {
                    std::string lex = value;
                    if (spec.kind == IdKind::Cid && spec.datatype != Datatype::String)
                        lex = local_name(local_iri(IdKind::Cid, value));
                    triples.push_back({*subject, *spec.predicate, Literal(lex, spec.datatype), g});
                }
            }
            for (std::size_t c = 0; c < manifest.columns.size(); ++c) {
                const auto& spec = manifest.columns[c];
                std::string value(trim(row[index[c]]));
                if (spec.role == ColumnRole::SubjectId || value.empty()) continue;
                switch (spec.role) {
                case ColumnRole::ObjectId:
                    triples.push_back({*subject, *spec.predicate, map_id(spec, value, triples), g});
                    break;
                case ColumnRole::Literal:
                    try {
                        triples.push_back({*subject, *spec.predicate, Literal(value, spec.datatype), g});
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError("column '" + spec.column + "': " + e.what());
                    }
                    break;
                case ColumnRole::Affinity: {
                    Affinity a = parse_affinity(value);
                    const std::string& base = spec.predicate->str();
                    triples.push_back({*subject, Iri(base + "_operator"), Literal::string(std::string(op_text(a.op))), g});
                    triples.push_back({*subject, Iri(base + "_value"), Literal(decimal_text(a.value), Datatype::Decimal), g});
                    break;
                }
                case ColumnRole::SubjectId:
                    break;
                }
            }
        } catch (const Error& e) {
            ++report.skipped;
            report.errors.push_back({r + 1, e.what()});
            continue;
        }
        ++report.emitted;
        for (const auto& t : triples)
            if (store.insert(t)) ++report.added;
    }
    return report;
}

LoadReport load_manifest_file(Store& store, const std::filesystem::path& manifest_path) {
    DatasetManifest m = read_manifest(manifest_path);
    if (m.source.empty()) throw ConfigError("manifest " + manifest_path.string() + " has no source");
    return load_dataset(store, m, parse_tsv(read_file(m.source)));
}

} // namespace chemlink::ingest
