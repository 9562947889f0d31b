#include "dpholo/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpholo {

void save_csv_sweep(const SweepResult& result, const std::string& path) {
    if (result.betas.size() != result.irradiance.size())
        throw std::invalid_argument("save_csv_sweep: inconsistent column lengths");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.is_open())
        throw std::runtime_error("save_csv_sweep: cannot write " + path);
    out << "beta_rad,irradiance_norm\n";
    char line[80];
    for (std::size_t i = 0; i < result.betas.size(); ++i) {
        std::snprintf(line, sizeof line, "%.8f,%.8f\n", result.betas[i], result.irradiance[i]);
        out << line;
    }
    if (!out)
        throw std::runtime_error("save_csv_sweep: write failed for " + path);
}

SweepResult load_csv_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw std::runtime_error("load_csv_sweep: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("beta_rad", 0) != 0)
        throw std::runtime_error("load_csv_sweep: missing header in " + path);
    SweepResult result;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double beta = 0.0, irr = 0.0;
        char comma = 0;
        if (!(row >> beta >> comma >> irr) || comma != ',')
            throw std::runtime_error("load_csv_sweep: malformed row in " + path);
        result.betas.push_back(beta);
        result.irradiance.push_back(irr);
    }
    return result;
}

}  // namespace dpholo
