#include "ollg/records_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ollg {

const char* const kRecordsCsvHeader =
    "t,E_total,E_splay,E_twistbend_k2,E_twistbend_k3,E_null,dissipation_cum,"
    "identity_residual_energy,identity_residual_beta,grad_sup,blowup_integral,"
    "H2_norm_sq,L4_grad,local_E_R_max,local_E_R_argmax_x,local_E_R_argmax_y,flags";

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string records_to_csv(const std::vector<EnergyRecord>& records) {
    std::ostringstream o;
    o << kRecordsCsvHeader << "\n";
    for (const EnergyRecord& r : records) {
        o << format_g17(r.t) << ',' << format_g17(r.E_total) << ','
          << format_g17(r.breakdown.splay) << ',' << format_g17(r.breakdown.twist) << ','
          << format_g17(r.breakdown.bend) << ',' << format_g17(r.breakdown.null_lagrangian) << ','
          << format_g17(r.dissipation_cum) << ',' << format_g17(r.identity_residual_energy) << ','
          << format_g17(r.identity_residual_beta) << ',' << format_g17(r.grad_sup) << ','
          << format_g17(r.blowup_integral) << ',' << format_g17(r.H2_norm_sq) << ','
          << format_g17(r.L4_grad) << ',' << format_g17(r.local_max) << ','
          << format_g17(r.local_argmax_x) << ',' << format_g17(r.local_argmax_y) << ','
          << r.flags << "\n";
    }
    return o.str();
}

void write_records_csv(const std::string& path, const std::vector<EnergyRecord>& records) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_records_csv: cannot open " + path);
    out << records_to_csv(records);
    if (!out) throw std::runtime_error("write_records_csv: write failed for " + path);
}

std::vector<EnergyRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_records_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kRecordsCsvHeader)
        throw std::runtime_error("read_records_csv: unexpected header in " + path);
    std::vector<EnergyRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double v[16];
        for (int c = 0; c < 16; ++c) {
            if (!std::getline(ls, cell, ','))
                throw std::runtime_error("read_records_csv: short row at line " +
                                         std::to_string(lineno));
            v[c] = std::strtod(cell.c_str(), nullptr);
        }
        if (!std::getline(ls, cell, ','))
            throw std::runtime_error("read_records_csv: short row at line " +
                                     std::to_string(lineno));
        EnergyRecord r;
        r.t = v[0];
        r.E_total = v[1];
        r.breakdown.splay = v[2];
        r.breakdown.twist = v[3];
        r.breakdown.bend = v[4];
        r.breakdown.null_lagrangian = v[5];
        r.breakdown.total = v[1];
        r.dissipation_cum = v[6];
        r.identity_residual_energy = v[7];
        r.identity_residual_beta = v[8];
        r.grad_sup = v[9];
        r.blowup_integral = v[10];
        r.H2_norm_sq = v[11];
        r.L4_grad = v[12];
        r.local_max = v[13];
        r.local_argmax_x = v[14];
        r.local_argmax_y = v[15];
        r.flags = std::atoi(cell.c_str());
        out.push_back(r);
    }
    return out;
}

} // namespace ollg
