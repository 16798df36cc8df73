#pragma once

#include "chemlink/store.hpp"
#include "chemlink/vocabulary.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chemlink::ingest {

enum class AffinityOp { Lt, Le, Eq, Gt, Ge };

std::string_view op_text(AffinityOp op) noexcept;

struct Affinity {
    AffinityOp op = AffinityOp::Eq;
    double value = 0;
    std::string unit = "nm";

    friend bool operator==(const Affinity&, const Affinity&) = default;
};

// "<op><number>[ unit]", e.g. ">0.5", "42", "<=100.0 nM". The operator
// defaults to "=", the unit to "nm" (units are lower-cased).
// Throws AffinityError carrying `text` when no non-negative number is found.
Affinity parse_affinity(std::string_view text);

// Canonical text: operator omitted for "=", shortest fixed-point value,
// unit appended only when it is not "nm".
std::string format_affinity(const Affinity& a);

// Shortest fixed-point rendering of a non-negative finite value; always a
// valid xsd:decimal lexical form.
std::string decimal_text(double value);

enum class IdKind {
    Cid,
    Uniprot,
    Gi,
    GeneSymbol,
    Pdb,
    DrugLocal,
    DiseaseName,
    SideEffectName,
    Pathway,
    Record,   // dataset-local record id, scoped by graph name
};

std::string_view id_kind_name(IdKind kind) noexcept;
std::optional<IdKind> id_kind_from_name(std::string_view name) noexcept;

struct MappedId {
    Iri iri;                         // hub IRI when a mapping exists
    std::optional<Iri> local;        // kind-local IRI, set only when it differs from `iri`
};

// Kind-local IRI of a raw identifier. Throws BadId on empty values and on
// CIDs that are not digit strings.
Iri local_iri(IdKind kind, std::string_view value, std::string_view scope = {});

// Normalizes `value` to its hub IRI. GI numbers and gene symbols are looked
// up in the mapping records of `store` (gi2uniprot:gi / gi2uniprot:uniprot,
// gene2uniprot:gene / gene2uniprot:uniprot); when several UniProt accessions
// are mapped the smallest IRI is chosen. `scope` is the graph name used for
// Record ids.
MappedId map_identifier(const Store& store, IdKind kind, std::string_view value,
                        std::string_view scope = {});

enum class ColumnRole { SubjectId, ObjectId, Literal, Affinity };

struct ColumnSpec {
    std::string column;
    std::optional<Iri> predicate;   // optional only for the subject-id column
    ColumnRole role = ColumnRole::Literal;
    IdKind kind = IdKind::Record;   // subject-id / object-id
    std::string scope;              // record ids of another graph ("record:<graph>")
    Datatype datatype = Datatype::String;   // literal, or subject-id raw value
};

struct DatasetManifest {
    Iri graph;
    DomainTag domain = DomainTag::Chemical;
    ProvenanceRecord provenance;
    std::vector<ColumnSpec> columns;
    // When false, identifiers keep their kind-local IRIs (used for the
    // mapping tables themselves).
    bool normalize = true;
    std::filesystem::path source;   // TSV path, resolved against the manifest

    // Throws ConfigError unless there is exactly one subject-id column and
    // every non-subject column has a predicate.
    void validate() const;
};

// Manifest text format:
//
//   graph = drugbank_interaction        (name or IRI)
//   domain = chemogenomics
//   what = ... / when / where / why / who
//   source = drugbank_interaction.tsv
//   normalize = true
//   [columns]
//   id        -                                  subject-id  record
//   DBID      drugbank_interaction:DBID          object-id   drug-local
//   ligand    bindingdb_interaction:monomerid    object-id   record:bindingdb_ligand
//   human     drugbank_interaction:human         literal     string
//   ic50      bindingdb_interaction:ic50         affinity
//
// Throws ConfigError with the offending line.
DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir = {},
                               const PrefixTable& prefixes = PrefixTable::defaults());
DatasetManifest read_manifest(const std::filesystem::path& path);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Tab-separated, header first; blank lines are skipped, CR stripped.
Table parse_tsv(std::string_view text);

struct RowError {
    std::size_t row = 0;   // 1-based data row
    std::string message;
};

struct LoadReport {
    Iri graph;
    std::size_t rows = 0;
    std::size_t emitted = 0;   // subjects written
    std::size_t added = 0;     // new triples
    std::size_t skipped = 0;
    std::vector<RowError> errors;

    std::string to_json() const;
    std::string summary() const;
};

// Registers the graph from the manifest, writes its 5W provenance and one
// subject per row. Failing rows are recorded and skipped; a row is committed
// only when all of its triples could be built.
// Throws ConfigError when a mapped column is missing from the table header.
LoadReport load_dataset(Store& store, const DatasetManifest& manifest, const Table& table);

// read_manifest + parse_tsv(source) + load_dataset.
LoadReport load_manifest_file(Store& store, const std::filesystem::path& manifest_path);

} // namespace chemlink::ingest
