#pragma once

#include "superteach/core.hpp"
#include "superteach/harness.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace superteach {

// 17 significant digits so every double round-trips losslessly.
std::string format_double(double v);

// Data CSV: header x0,...,x{d-1}[,y]; one row per example.
void write_data_csv(const TrainingSet& s, std::ostream& os);
TrainingSet read_data_csv(std::istream& is);

// Results CSV: task,teacher,n,d,trial,seed,risk_full,risk_subset,ratio,
// subset_size,wall_ms,error. A missing ratio is an empty field.
void write_results_csv(const std::vector<TrialRecord>& records,
                       const std::string& task_name,
                       const std::string& teacher_name, std::ostream& os);
std::vector<TrialRecord> read_results_csv(std::istream& is);

// Medians CSV mirroring the sweep-table layout.
void write_medians_csv(const std::vector<SummaryRow>& rows, std::ostream& os);

}  // namespace superteach
