// Versioned JSON serialization for test functions and results, plus the CSV
// writer/reader used by the CLI (RFC-4180-style, LF line endings, %.17g).
#pragma once

#include <string>
#include <vector>

#include "pwf/model.hpp"
#include "pwf/pipeline.hpp"

namespace pwf {

std::string to_json(const TestFunction& f);
TestFunction test_function_from_json(const std::string& text);

std::string to_json(const ReconstructionResult& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Minimal CSV layer: numbers are emitted with %.17g; fields containing
// separators or quotes are quoted.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_field(double v);
std::string csv_emit(const CsvTable& t);
CsvTable csv_parse(const std::string& text);

}  // namespace pwf
