#include "eegspect/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "eegspect/util.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace eegspect::edf {

const CatalogEntry* RecordCatalog::find(const std::string& source_id) const {
  for (const auto& e : entries) {
    if (e.source_id == source_id) return &e;
  }
  return nullptr;
}

namespace {
bool has_extension(const fs::path& p, const char* ext) {
  std::string s = to_upper(p.extension().string());
  return s == to_upper(std::string(ext));
}
}  // namespace

CatalogBuildResult build_catalog(const std::string& directory, unsigned jobs) {
  if (!fs::is_directory(directory)) {
    throw std::runtime_error("not a readable directory: " + directory);
  }
  std::vector<fs::path> edf_paths;
  std::vector<fs::path> text_paths;
  for (const auto& entry : fs::recursive_directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    if (has_extension(entry.path(), ".edf")) {
      edf_paths.push_back(entry.path());
    } else if (has_extension(entry.path(), ".txt")) {
      text_paths.push_back(entry.path());
    }
  }
  std::sort(edf_paths.begin(), edf_paths.end());
  std::sort(text_paths.begin(), text_paths.end());

  CatalogBuildResult result;

  // Merge every summary file found; CHB-MIT ships one per patient.
  std::map<std::string, std::vector<SeizureAnnotation>> annotations;
  for (const auto& p : text_paths) {
    std::ifstream in(p);
    if (!in) {
      result.warnings.push_back("cannot read summary file: " + p.string());
      continue;
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (text.find("File Name:") == std::string::npos) continue;
    try {
      auto parsed = parse_summary(text);
      for (auto& [file, list] : parsed) {
        if (annotations.count(file)) {
          throw std::runtime_error("file annotated in two summaries: " + file);
        }
        annotations[file] = std::move(list);
      }
    } catch (const std::exception& ex) {
      result.warnings.push_back("summary " + p.string() + ": " + ex.what());
    }
  }

  std::vector<CatalogEntry> parsed(edf_paths.size());
  std::vector<std::string> parse_errors(edf_paths.size());
  parallel_for(edf_paths.size(), jobs, [&](std::size_t i) {
    const auto& path = edf_paths[i];
    try {
      const auto edf = parse_edf_file(path.string());
      CatalogEntry entry;
      entry.source_id = path.stem().string();
      entry.path = path.string();
      entry.duration_s = static_cast<double>(edf.header.record_count) *
                         edf.header.record_duration_s;
      parsed[i] = std::move(entry);
    } catch (const std::exception& ex) {
      parse_errors[i] = ex.what();
    }
  });

  for (std::size_t i = 0; i < edf_paths.size(); ++i) {
    if (!parse_errors[i].empty()) {
      result.warnings.push_back("skipping " + edf_paths[i].string() + ": " +
                                parse_errors[i]);
      continue;
    }
    CatalogEntry entry = std::move(parsed[i]);
    const std::string file_name = edf_paths[i].filename().string();
    auto it = annotations.find(file_name);
    if (it != annotations.end()) {
      entry.seizures = it->second;
      std::sort(entry.seizures.begin(), entry.seizures.end(),
                [](const SeizureAnnotation& a, const SeizureAnnotation& b) {
                  return a.start_s < b.start_s;
                });
    } else {
      result.warnings.push_back("no summary entry for " + file_name +
                                "; assuming no seizures");
    }
    result.catalog.entries.push_back(std::move(entry));
  }

  std::sort(result.catalog.entries.begin(), result.catalog.entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) {
              return a.source_id < b.source_id;
            });
  for (std::size_t i = 1; i < result.catalog.entries.size(); ++i) {
    if (result.catalog.entries[i].source_id ==
        result.catalog.entries[i - 1].source_id) {
      throw std::runtime_error("duplicate source_id in catalog: " +
                               result.catalog.entries[i].source_id);
    }
  }
  return result;
}

std::string catalog_to_json(const RecordCatalog& catalog) {
  nlohmann::ordered_json root;
  root["schema_version"] = 1;
  root["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : catalog.entries) {
    nlohmann::ordered_json je;
    je["source_id"] = e.source_id;
    je["path"] = e.path;
    je["duration_s"] = e.duration_s;
    je["seizures"] = nlohmann::ordered_json::array();
    for (const auto& s : e.seizures) {
      je["seizures"].push_back({{"start_s", s.start_s}, {"end_s", s.end_s}});
    }
    root["entries"].push_back(std::move(je));
  }
  return root.dump(2) + "\n";
}

RecordCatalog catalog_from_json(const std::string& json_text) {
  const auto root = nlohmann::ordered_json::parse(json_text);
  if (!root.contains("schema_version") ||
      root["schema_version"].get<int>() != 1) {
    throw std::runtime_error("unsupported catalog schema version");
  }
  RecordCatalog catalog;
  for (const auto& je : root.at("entries")) {
    CatalogEntry e;
    e.source_id = je.at("source_id").get<std::string>();
    e.path = je.at("path").get<std::string>();
    e.duration_s = je.at("duration_s").get<double>();
    for (const auto& js : je.at("seizures")) {
      e.seizures.push_back({js.at("start_s").get<long long>(),
                            js.at("end_s").get<long long>()});
    }
    catalog.entries.push_back(std::move(e));
  }
  return catalog;
}

void save_catalog(const RecordCatalog& catalog, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write catalog: " + path);
  out << catalog_to_json(catalog);
}

RecordCatalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read catalog: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return catalog_from_json(text);
}

}  // namespace eegspect::edf
