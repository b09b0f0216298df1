#pragma once

// Machine-readable result rows. One flat schema serves per-slot inspection
// and summary extraction:
//
//   scenario_id, algorithm, slot, P, R, Q_next, active_cap, objective
//
// Slot rows fill P/R/Q_next/active_cap; summary rows use slot = "*" and carry
// the objective. All numbers are printed with fixed six decimals so repeated
// runs are byte-identical.

#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

namespace crsched {

enum class OutFormat { Csv, Jsonl };

class RowWriter {
public:
    RowWriter(std::ostream& out, OutFormat fmt) : out_(out), fmt_(fmt) {}

    void header() {
        if (fmt_ == OutFormat::Csv)
            out_ << "scenario_id,algorithm,slot,P,R,Q_next,active_cap,objective\n";
    }

    void warning(std::string_view text) {
        if (fmt_ == OutFormat::Csv)
            out_ << "# warning: " << text << "\n";
        else
            out_ << "{\"warning\":\"" << text << "\"}\n";
    }

    void slot_row(std::string_view scenario, std::string_view algo,
                  std::size_t slot, double P, double R, double q_next,
                  std::string_view cap) {
        if (fmt_ == OutFormat::Csv) {
            out_ << scenario << ',' << algo << ',' << slot << ',' << num(P)
                 << ',' << num(R) << ',' << num(q_next) << ',' << cap << ",\n";
        } else {
            out_ << "{\"scenario_id\":\"" << scenario << "\",\"algorithm\":\""
                 << algo << "\",\"slot\":\"" << slot << "\",\"P\":" << num(P)
                 << ",\"R\":" << num(R) << ",\"Q_next\":" << num(q_next)
                 << ",\"active_cap\":\"" << cap << "\"}\n";
        }
    }

    void summary_row(std::string_view scenario, std::string_view algo,
                     double objective) {
        if (fmt_ == OutFormat::Csv) {
            out_ << scenario << ',' << algo << ",*,,,,," << num(objective) << "\n";
        } else {
            out_ << "{\"scenario_id\":\"" << scenario << "\",\"algorithm\":\""
                 << algo << "\",\"slot\":\"*\",\"objective\":" << num(objective)
                 << "}\n";
        }
    }

    // free-text summary (certificates, verdicts); value lands in the
    // active_cap column
    void text_row(std::string_view scenario, std::string_view algo,
                  std::string_view value) {
        if (fmt_ == OutFormat::Csv) {
            out_ << scenario << ',' << algo << ",*,,,," << value << ",\n";
        } else {
            out_ << "{\"scenario_id\":\"" << scenario << "\",\"algorithm\":\""
                 << algo << "\",\"slot\":\"*\",\"active_cap\":\"" << value
                 << "\"}\n";
        }
    }

private:
    std::string num(double v) {
        if (v == 0.0) v = 0.0;  // normalize -0
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    }

    std::ostream& out_;
    OutFormat fmt_;
};

}  // namespace crsched
