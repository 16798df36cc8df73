#pragma once

#include "chemlink/store.hpp"

#include <filesystem>
#include <string>

namespace chemlink {

// On-disk store layout:
//   <dir>/registry.json       graph IRI, domain tag and provenance per graph
//   <dir>/graphs/<name>.nt    one N-Triples document per graph
std::string registry_to_json(const Store& store);
void registry_from_json(Store& store, const std::string& json_text);

void save_store(const Store& store, const std::filesystem::path& dir);
Store load_store(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace chemlink
