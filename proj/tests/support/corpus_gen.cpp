#include "corpus_gen.hpp"

#include <cctype>

namespace oracle {

using namespace chemlink;
using namespace chemlink::litxval;

namespace {

struct Entry {
    EntityKind kind;
    const char* term;
    const char* iri;
};

const std::vector<Entry> kEntries = {
    {EntityKind::Compound, "doxazosin", "http://chemlink.org/compound/2095"},
    {EntityKind::Compound, "prazosin", "http://chemlink.org/compound/4893"},
    {EntityKind::Compound, "gefitinib", "http://chemlink.org/compound/123631"},
    {EntityKind::Compound, "tamoxifen", "http://chemlink.org/compound/2733526"},
    {EntityKind::Compound, "tamoxifen citrate", "http://chemlink.org/compound/2733525"},
    {EntityKind::Compound, "alpha toxin", "http://chemlink.org/compound/900001"},
    {EntityKind::Gene, "egfr", "http://chemlink.org/uniprot/P00533"},
    {EntityKind::Gene, "erbb2", "http://chemlink.org/uniprot/P04626"},
    {EntityKind::Gene, "her2", "http://chemlink.org/uniprot/P04626"},
    {EntityKind::Gene, "adra1a", "http://chemlink.org/uniprot/P35348"},
    {EntityKind::Gene, "protein kinase c", "http://chemlink.org/uniprot/P17252"},
    {EntityKind::Disease, "cancer", "http://chemlink.org/disease/cancer"},
    {EntityKind::Disease, "lung cancer", "http://chemlink.org/disease/lung%20cancer"},
    {EntityKind::Disease, "malaria", "http://chemlink.org/disease/malaria"},
    {EntityKind::Disease, "cerebral malaria", "http://chemlink.org/disease/cerebral%20malaria"},
    {EntityKind::Disease, "heart failure", "http://chemlink.org/disease/heart%20failure"},
    {EntityKind::SideEffect, "necrosis", "http://chemlink.org/side_effect/necrosis"},
    {EntityKind::SideEffect, "hepatic necrosis", "http://chemlink.org/side_effect/hepatic%20necrosis"},
    {EntityKind::SideEffect, "hepatomegaly", "http://chemlink.org/side_effect/hepatomegaly"},
    {EntityKind::SideEffect, "hypotension", "http://chemlink.org/side_effect/hypotension"},
};

const std::vector<std::string> kFiller = {"the",    "patients", "were",  "treated",     "with",     "study",
                                          "observed", "levels", "in",    "and",         "of",       "after",
                                          "dose",   "response", "cells", "we",          "report",   "significant",
                                          "increase", "mice",   "was",   "associated",  "reduced",  "2009"};
const std::vector<std::string> kSeparators = {" ", ", ", ". ", " (", ") ", " - ", "; ", "/"};

std::string recase(std::string s, int mode) {
    if (mode == 1) {
        for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else if (mode == 2) {
        bool start = true;
        for (auto& c : s) {
            if (start) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            start = c == ' ';
        }
    }
    return s;
}

} // namespace

GeneratedCorpus generate_corpus(std::mt19937& rng, std::size_t docs) {
    GeneratedCorpus out;
    for (auto kind : {EntityKind::Compound, EntityKind::Gene, EntityKind::Disease, EntityKind::SideEffect}) {
        std::vector<std::pair<std::string, Iri>> table;
        for (const auto& e : kEntries)
            if (e.kind == kind) table.emplace_back(e.term, Iri(e.iri));
        out.dicts.push_back(build_dictionary(kind, table));
    }

    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    for (std::size_t d = 0; d < docs; ++d) {
        AbstractDoc doc;
        doc.pmid = std::to_string(20000000 + d);
        doc.year = 1990 + uniform(0, 19);
        std::vector<std::tuple<std::string, std::size_t, std::size_t>> spans;   // entity, start, end within part

        auto build = [&](int tokens, std::string& text) {
            std::vector<std::tuple<std::string, std::size_t, std::size_t>> local;
            for (int i = 0; i < tokens; ++i) {
                if (i) text += kSeparators[static_cast<std::size_t>(uniform(0, static_cast<int>(kSeparators.size()) - 1))];
                int roll = uniform(0, 9);
                if (roll < 3) {
                    const auto& e = kEntries[static_cast<std::size_t>(uniform(0, static_cast<int>(kEntries.size()) - 1))];
                    std::size_t start = text.size();
                    text += recase(e.term, uniform(0, 2));
                    local.emplace_back(e.iri, start, text.size());
                } else if (roll == 3) {
                    const auto& e = kEntries[static_cast<std::size_t>(uniform(0, static_cast<int>(kEntries.size()) - 1))];
                    std::string term = e.term;
                    if (term.find(' ') != std::string::npos) term = "cancer";
                    text += term + (chance(0.5) ? "s" : "ous");
                } else {
                    text += kFiller[static_cast<std::size_t>(uniform(0, static_cast<int>(kFiller.size()) - 1))];
                }
            }
            return local;
        };

        auto title_spans = build(uniform(2, 8), doc.title);
        auto body_spans = build(uniform(10, 60), doc.body);
        for (const auto& [iri, s, e] : title_spans) out.planted.emplace(doc.pmid, iri, s, e);
        std::size_t offset = doc.title.size() + 1;
        for (const auto& [iri, s, e] : body_spans) out.planted.emplace(doc.pmid, iri, s + offset, e + offset);
        out.docs.push_back(std::move(doc));
    }
    return out;
}

} // namespace oracle
