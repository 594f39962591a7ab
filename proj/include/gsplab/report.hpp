#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsplab/detector.hpp"
#include "gsplab/identities.hpp"
#include "gsplab/sampler.hpp"

namespace gsplab {

/// "%.17g": enough digits for every double to parse back bit-identically.
std::string fmt17(double v);

void write_identity_csv(std::ostream& os, const std::vector<IdentityReport>& rows, const std::vector<bool>& pass);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_draws_csv(std::ostream& os, const std::vector<double>& draws);
void write_estimate_csv(std::ostream& os, const MCEstimate& e);
void write_detection_csv(std::ostream& os, const DetectionResult& r);

nlohmann::json to_json(const DetectionResult& r);
nlohmann::json to_json(const MCEstimate& e);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const SweepRow& r);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads back the numeric CSV files written above.
CsvTable read_numeric_csv(std::istream& in);

}  // namespace gsplab
