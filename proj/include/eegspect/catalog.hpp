#pragma once

#include <string>
#include <vector>

#include "eegspect/edf.hpp"

namespace eegspect::edf {

struct CatalogEntry {
  std::string source_id;  // EDF file stem, unique
  std::string path;
  double duration_s = 0.0;
  std::vector<SeizureAnnotation> seizures;
};

struct RecordCatalog {
  std::vector<CatalogEntry> entries;  // sorted by source_id

  const CatalogEntry* find(const std::string& source_id) const;
};

struct CatalogBuildResult {
  RecordCatalog catalog;
  std::vector<std::string> warnings;  // skipped/unannotated files
};

// Scans a directory tree for EDF files and summary text files. Files that
// fail to parse are skipped with a warning; files without a summary entry
// get empty annotation lists and a warning. Entries come out sorted by
// source_id. `jobs` bounds the parse workers (0 = hardware default).
CatalogBuildResult build_catalog(const std::string& directory,
                                 unsigned jobs = 0);

std::string catalog_to_json(const RecordCatalog& catalog);
RecordCatalog catalog_from_json(const std::string& json_text);

void save_catalog(const RecordCatalog& catalog, const std::string& path);
RecordCatalog load_catalog(const std::string& path);

}  // namespace eegspect::edf
