// dpholo: command-line driver for the double-phase encoding simulator.
//
// Subcommands: sweep, calibrate, encode, retrieve, repro (fig3|fig4|fig5).
// Shared flags can also come from a `key = value` config file (--config);
// command-line flags override file values key by key.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpholo/csv.hpp"
#include "dpholo/encode.hpp"
#include "dpholo/grid.hpp"
#include "dpholo/metrics.hpp"
#include "dpholo/optics.hpp"
#include "dpholo/patterns.hpp"
#include "dpholo/pgm.hpp"
#include "dpholo/retrieve.hpp"
#include "dpholo/slm.hpp"

using namespace dpholo;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string size = "512x512";
    std::vector<int> cells;
    std::vector<double> etas;
    int upsample = 16;
    double cutoff = 0.0;  // 0 = automatic iris
    int blazed_period = 0;
    std::string blazed_axis = "horizontal";
    int betas = 64;
    std::uint64_t seed = 1;
    std::string out = "out";
    std::string config_path;

    std::string input;  // calibrate: measured sweep CSV
    double search_lo = 0.0;
    double search_hi = 0.95;

    std::string amplitude_path;
    std::string phase_path;
    bool m3 = false;

    std::string figure;  // repro
};

struct GridSize {
    int width = 512;
    int height = 512;
};

GridSize parse_size(const std::string& s) {
    GridSize g;
    char sep = 0;
    std::istringstream in(s);
    if (!(in >> g.width >> sep >> g.height) || (sep != 'x' && sep != 'X') || g.width < 2 ||
        g.height < 2)
        throw std::invalid_argument("bad --size, expected WxH (e.g. 512x512)");
    return g;
}

BlazeAxis parse_axis(const std::string& s) {
    if (s == "horizontal") return BlazeAxis::horizontal;
    if (s == "vertical") return BlazeAxis::vertical;
    throw std::invalid_argument("bad --blazed-axis, expected horizontal|vertical");
}

// plain `key = value` file, '#' comments, UTF-8
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw std::invalid_argument("cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// config file fills in whatever the command line left untouched
void apply_config(const CLI::App& cmd, Options& opt) {
    if (opt.config_path.empty()) return;
    const auto kv = read_config(opt.config_path);
    auto fresh = [&](const char* flag) {
        const CLI::Option* o = cmd.get_option_no_throw(flag);
        return o != nullptr && o->count() == 0;
    };
    for (const auto& [key, value] : kv) {
        try {
            if (key == "size" && fresh("--size")) opt.size = value;
            else if (key == "cell" && fresh("--cell")) opt.cells = parse_int_list(value);
            else if (key == "eta" && fresh("--eta")) opt.etas = parse_double_list(value);
            else if (key == "upsample" && fresh("--upsample")) opt.upsample = std::stoi(value);
            else if (key == "cutoff" && fresh("--cutoff")) opt.cutoff = std::stod(value);
            else if (key == "blazed_period" && fresh("--blazed-period"))
                opt.blazed_period = std::stoi(value);
            else if (key == "blazed_axis" && fresh("--blazed-axis")) opt.blazed_axis = value;
            else if (key == "betas" && fresh("--betas")) opt.betas = std::stoi(value);
            else if (key == "seed" && fresh("--seed")) opt.seed = std::stoull(value);
            else if (key == "out" && fresh("--out")) opt.out = value;
            else if (key == "search_lo" && fresh("--search-lo")) opt.search_lo = std::stod(value);
            else if (key == "search_hi" && fresh("--search-hi")) opt.search_hi = std::stod(value);
            // unknown keys are ignored so one file can serve several subcommands
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "' has a bad value: " + value);
        }
    }
}

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--size", opt.size, "grid size WxH (SLM pixels)");
    cmd->add_option("--upsample", opt.upsample, "sub-pixels per SLM pixel side");
    cmd->add_option("--cutoff", opt.cutoff, "iris radius in cycles/pixel (0 = auto)");
    cmd->add_option("--betas", opt.betas, "number of beta samples in [0, pi]");
    cmd->add_option("--seed", opt.seed, "seed for synthetic patterns");
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--config", opt.config_path, "key = value config file");
}

void ensure_out_dir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out);
}

// configuration conflicts surface here, before any heavy work
void check_model(int cell, double eta, int upsample) {
    cell_zones(cell, CrosstalkModel{eta, upsample, 0.5});
}

std::string eta_tag(double eta) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", eta);
    return buf;
}

RealGrid to_unit(const RealGrid& g, double scale) {
    RealGrid unit(g.width(), g.height());
    for (std::size_t i = 0; i < g.size(); ++i)
        unit.data()[i] = std::min(1.0, std::max(0.0, g.data()[i] * scale));
    return unit;
}

double grid_max(const RealGrid& g) {
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, g.data()[i]);
    return m;
}

struct LoadedField {
    AmplitudeMap amp;
    PhaseElement phase;
};

LoadedField load_field(const Options& opt) {
    std::optional<RealGrid> amp_unit, phase_unit;
    if (!opt.amplitude_path.empty()) amp_unit = load_grayscale(opt.amplitude_path);
    if (!opt.phase_path.empty()) phase_unit = load_grayscale(opt.phase_path);
    if (!amp_unit && !phase_unit)
        throw std::invalid_argument("need at least one of --amplitude / --phase");
    if (amp_unit && phase_unit && !amp_unit->same_shape(*phase_unit))
        throw std::invalid_argument("amplitude and phase images differ in size");
    const int w = amp_unit ? amp_unit->width() : phase_unit->width();
    const int h = amp_unit ? amp_unit->height() : phase_unit->height();
    AmplitudeMap amp = amp_unit ? amplitude_from_unit(*amp_unit) : AmplitudeMap(w, h, kAmpMax);
    PhaseElement phase = phase_unit ? phase_from_unit(*phase_unit) : PhaseElement(w, h, 0.0);
    return {std::move(amp), std::move(phase)};
}

int cmd_sweep(Options& opt) {
    const GridSize size = parse_size(opt.size);
    if (opt.cells.empty()) opt.cells = {1};
    if (opt.etas.empty()) opt.etas = {0.0};
    if (opt.betas < 2) throw std::invalid_argument("--betas must be at least 2");
    for (int cell : opt.cells)
        for (double eta : opt.etas) check_model(cell, eta, opt.upsample);
    ensure_out_dir(opt.out);
    const std::vector<double> betas = uniform_betas(opt.betas);
    for (int cell : opt.cells) {
        for (double eta : opt.etas) {
            const CrosstalkModel model{eta, opt.upsample, 0.5};
            const FilterSpec filter{
                opt.cutoff > 0.0 ? opt.cutoff : default_cutoff(cell, false), 0.0, 0.0};
            const SweepResult s =
                flat_sweep(size.width, size.height, betas, cell, model, filter);
            const std::string path =
                opt.out + "/sweep_cell" + std::to_string(cell) + "_eta" + eta_tag(eta) + ".csv";
            save_csv_sweep(s, path);
            std::printf("sweep cell=%d eta=%s realized=%.4f -> %s\n", cell, eta_tag(eta).c_str(),
                        realized_eta(cell, model), path.c_str());
        }
    }
    return 0;
}

int cmd_calibrate(const CLI::App& cmd, Options& opt) {
    if (opt.cells.empty()) opt.cells = {1};
    if (opt.cells.size() != 1)
        throw std::invalid_argument("calibrate expects exactly one --cell");
    const int cell = opt.cells.front();
    const SweepResult measured = load_csv_sweep(opt.input);

    SimParams sim;
    if (cmd.get_option("--size")->count() > 0) {
        const GridSize size = parse_size(opt.size);
        sim.width = size.width;
        sim.height = size.height;
    } else {
        sim.width = sim.height = 16 * cell;  // smallest grid with 8 periods
    }
    sim.upsample = opt.upsample;
    sim.cutoff = opt.cutoff;
    check_model(cell, std::min(opt.search_hi, 0.95), sim.upsample);

    const FitResult fit = fit_eta(measured, cell, opt.search_lo, opt.search_hi, sim);
    ensure_out_dir(opt.out);
    const std::string path = opt.out + "/fit_cell" + std::to_string(cell) + ".csv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    char row[128];
    std::snprintf(row, sizeof row, "eta_hat,fit_rmse,evaluations\n%.6f,%.8f,%d\n", fit.eta_hat,
                  fit.fit_rmse, fit.evaluations);
    out << row;
    std::printf("calibrate cell=%d eta_hat=%.4f fit_rmse=%.6f evaluations=%d -> %s\n", cell,
                fit.eta_hat, fit.fit_rmse, fit.evaluations, path.c_str());
    return 0;
}

int cmd_encode(Options& opt) {
    if (opt.cells.empty()) opt.cells = {1};
    if (opt.cells.size() != 1) throw std::invalid_argument("encode expects exactly one --cell");
    const int cell = opt.cells.front();
    const LoadedField in = load_field(opt);
    ensure_out_dir(opt.out);

    const PhasePair pair = decompose(in.amp, in.phase);
    PhaseElement alpha = multiplex(pair.lead, pair.lag, cell);
    if (opt.m3) {
        CarvedElement carved = carve_reference(alpha, cell);
        alpha = std::move(carved.alpha);
        RealGrid mask(carved.m3.width(), carved.m3.height());
        for (int i = 0; i < mask.height(); ++i)
            for (int j = 0; j < mask.width(); ++j) mask(i, j) = carved.m3(i, j);
        save_pgm8(mask, opt.out + "/m3.pgm");
    }
    if (opt.blazed_period > 0)
        alpha = add_blazed(alpha, opt.blazed_period, parse_axis(opt.blazed_axis));
    save_phase_bitmap(alpha, opt.out + "/alpha.pgm");
    std::printf("encode cell=%d m3=%d blazed=%d -> %s/alpha.pgm\n", cell, opt.m3 ? 1 : 0,
                opt.blazed_period, opt.out.c_str());
    return 0;
}

int cmd_retrieve(Options& opt) {
    if (opt.cells.empty()) opt.cells = {1};
    if (opt.cells.size() != 1) throw std::invalid_argument("retrieve expects exactly one --cell");
    if (opt.etas.empty()) opt.etas = {0.0};
    if (opt.etas.size() != 1) throw std::invalid_argument("retrieve expects exactly one --eta");
    const int cell = opt.cells.front();
    const double eta = opt.etas.front();
    check_model(cell, eta, opt.upsample);

    const LoadedField in = load_field(opt);
    EncodingConfig cfg;
    cfg.cell = cell;
    cfg.m3_enabled = true;
    cfg.blazed_period = opt.blazed_period;
    cfg.blazed_axis = parse_axis(opt.blazed_axis);
    const CrosstalkModel model{eta, opt.upsample, 0.5};
    const RetrievedField got = encode_retrieve(in.amp, in.phase, cfg, model,
                                               OpticalTrain{opt.upsample, false}, opt.cutoff);

    ensure_out_dir(opt.out);
    const double peak = grid_max(got.amplitude);
    save_pgm16(to_unit(got.amplitude, peak > 0.0 ? 1.0 / peak : 1.0),
               opt.out + "/retrieved_amplitude.pgm");
    save_phase_bitmap(got.phase, opt.out + "/retrieved_phase.pgm");

    const double amp_rmse = rmse_amplitude(in.amp.grid(), got.amplitude);
    const double phase_rmse =
        rmse_phase(in.phase, got.phase, support_from_amplitude(in.amp.grid()));
    const std::string report = opt.out + "/report.csv";
    std::ofstream rep(report, std::ios::binary | std::ios::trunc);
    if (!rep) throw std::runtime_error("cannot write " + report);
    char row[160];
    std::snprintf(row, sizeof row,
                  "cell,eta,amp_rmse_percent,phase_rmse_percent\n%d,%.6f,%.4f,%.4f\n", cell, eta,
                  amp_rmse, phase_rmse);
    rep << row;
    std::printf("retrieve cell=%d eta=%s amp_rmse=%.3f%% phase_rmse=%.3f%% -> %s\n", cell,
                eta_tag(eta).c_str(), amp_rmse, phase_rmse, opt.out.c_str());
    return 0;
}

int repro_fig3(const CLI::App& cmd, Options& opt) {
    const GridSize size = parse_size(opt.size);
    const int up = cmd.get_option("--upsample")->count() > 0 ? opt.upsample : 8;
    const std::vector<double> betas = uniform_betas(opt.betas);
    ensure_out_dir(opt.out);

    const SweepResult ideal =
        flat_sweep(size.width, size.height, betas, 1, CrosstalkModel{0.0, 1, 0.5},
                   FilterSpec{default_cutoff(1, false), 0.0, 0.0});
    save_csv_sweep(ideal, opt.out + "/sweep_ideal.csv");
    std::printf("fig3 ideal -> %s/sweep_ideal.csv\n", opt.out.c_str());

    const std::pair<int, double> curves[3] = {{1, 0.73}, {4, 0.22}, {10, 0.09}};
    for (const auto& [cell, eta] : curves) {
        check_model(cell, eta, up);
        const CrosstalkModel model{eta, up, 0.5};
        const SweepResult s =
            flat_sweep(size.width, size.height, betas, cell, model,
                       FilterSpec{default_cutoff(cell, false), 0.0, 0.0});
        const std::string path =
            opt.out + "/sweep_cell" + std::to_string(cell) + "_eta" + eta_tag(eta) + ".csv";
        save_csv_sweep(s, path);
        std::printf("fig3 cell=%d eta=%.2f realized=%.4f -> %s\n", cell, eta,
                    realized_eta(cell, model), path.c_str());
    }
    return 0;
}

int repro_fig4(const CLI::App& cmd, Options& opt) {
    const GridSize size = parse_size(opt.size);
    const int up = cmd.get_option("--upsample")->count() > 0 ? opt.upsample : 8;
    ensure_out_dir(opt.out);

    const AmplitudeMap chart = test_chart(size.width, size.height, 0.02, opt.seed);
    save_pgm16(to_unit(chart.grid(), 1.0 / kAmpMax), opt.out + "/chart.pgm");
    const PhaseElement flat(size.width, size.height, 0.0);

    std::ofstream rep(opt.out + "/fig4_report.csv", std::ios::binary | std::ios::trunc);
    rep << "cell,eta,amp_rmse_percent\n";
    const std::pair<int, double> runs[3] = {{1, 0.73}, {4, 0.22}, {10, 0.09}};
    for (const auto& [cell, eta] : runs) {
        check_model(cell, eta, up);
        const PhasePair pair = decompose(chart, flat);
        const PhaseElement alpha = multiplex(pair.lead, pair.lag, cell);
        const ComplexField device = render(alpha, cell, CrosstalkModel{eta, up, 0.5});
        const double cutoff = opt.cutoff > 0.0 ? opt.cutoff : default_cutoff(cell, false);
        const ComplexField imaged =
            propagate(device, FilterSpec{cutoff, 0.0, 0.0}, OpticalTrain{up, false});
        const RealGrid irr = camera_image(imaged, up);
        RealGrid amp(irr.width(), irr.height());
        for (std::size_t i = 0; i < irr.size(); ++i) amp.data()[i] = std::sqrt(irr.data()[i]);
        const double peak = grid_max(amp);
        save_pgm16(to_unit(amp, peak > 0.0 ? 1.0 / peak : 1.0),
                   opt.out + "/amp_cell" + std::to_string(cell) + ".pgm");
        const double err = rmse_amplitude(chart.grid(), amp);
        char row[96];
        std::snprintf(row, sizeof row, "%d,%.6f,%.4f\n", cell, eta, err);
        rep << row;
        std::printf("fig4 cell=%d eta=%.2f amp_rmse=%.3f%%\n", cell, eta, err);
    }
    return 0;
}

int repro_fig5(const CLI::App& cmd, Options& opt) {
    GridSize size = parse_size(opt.size);
    if (cmd.get_option("--size")->count() == 0) size = {480, 480};  // divisible by 4*cell for cell 5
    const int up = cmd.get_option("--upsample")->count() > 0 ? opt.upsample : 8;
    ensure_out_dir(opt.out);

    const AmplitudeMap amp = test_chart(size.width, size.height, 0.02, opt.seed);
    const PhaseElement phase = ramp_blob_phase(size.width, size.height, opt.seed + 1);
    save_pgm16(to_unit(amp.grid(), 1.0 / kAmpMax), opt.out + "/amplitude.pgm");
    save_phase_bitmap(phase, opt.out + "/phase.pgm");
    const BinaryMask support = support_from_amplitude(amp.grid());

    std::ofstream rep(opt.out + "/fig5_report.csv", std::ios::binary | std::ios::trunc);
    rep << "cell,eta,amp_rmse_percent,phase_rmse_percent\n";
    for (int cell : {1, 2, 5}) {
        const double eta = opt.etas.empty() ? eta_at_cell(0.73, cell) : opt.etas.front();
        check_model(cell, eta, up);
        EncodingConfig cfg;
        cfg.cell = cell;
        cfg.m3_enabled = true;
        cfg.blazed_period = opt.blazed_period;
        cfg.blazed_axis = parse_axis(opt.blazed_axis);
        const RetrievedField got =
            encode_retrieve(amp, phase, cfg, CrosstalkModel{eta, up, 0.5},
                            OpticalTrain{up, false}, opt.cutoff);
        const double peak = grid_max(got.amplitude);
        save_pgm16(to_unit(got.amplitude, peak > 0.0 ? 1.0 / peak : 1.0),
                   opt.out + "/retrieved_amp_cell" + std::to_string(cell) + ".pgm");
        save_phase_bitmap(got.phase,
                          opt.out + "/retrieved_phase_cell" + std::to_string(cell) + ".pgm");
        const double a = rmse_amplitude(amp.grid(), got.amplitude);
        const double p = rmse_phase(phase, got.phase, support);
        char row[128];
        std::snprintf(row, sizeof row, "%d,%.6f,%.4f,%.4f\n", cell, eta, a, p);
        rep << row;
        std::printf("fig5 cell=%d eta=%.4f amp_rmse=%.3f%% phase_rmse=%.3f%%\n", cell, eta, a, p);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double-phase hologram encoding simulator with a pixel-crosstalk model"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* sweep = app.add_subcommand("sweep", "flat-amplitude irradiance sweeps");
    sweep->add_option("--cell", opt.cells, "multiplex cell sides");
    sweep->add_option("--eta", opt.etas, "border fractions");
    add_common_flags(sweep, opt);

    CLI::App* calibrate = app.add_subcommand("calibrate", "fit eta to a measured sweep CSV");
    calibrate->add_option("--input", opt.input, "measured sweep CSV")->required();
    calibrate->add_option("--cell", opt.cells, "multiplex cell side");
    calibrate->add_option("--search-lo", opt.search_lo, "search interval lower edge");
    calibrate->add_option("--search-hi", opt.search_hi, "search interval upper edge");
    add_common_flags(calibrate, opt);

    CLI::App* encode = app.add_subcommand("encode", "build the phase element for given images");
    encode->add_option("--amplitude", opt.amplitude_path, "amplitude PGM (P5)");
    encode->add_option("--phase", opt.phase_path, "phase PGM (P5)");
    encode->add_option("--cell", opt.cells, "multiplex cell side");
    encode->add_flag("--m3", opt.m3, "carve the phase-shifting reference cells");
    encode->add_option("--blazed-period", opt.blazed_period, "carrier period in pixels");
    encode->add_option("--blazed-axis", opt.blazed_axis, "horizontal|vertical");
    add_common_flags(encode, opt);

    CLI::App* retrieve =
        app.add_subcommand("retrieve", "full encode/filter/phase-shift retrieval");
    retrieve->add_option("--amplitude", opt.amplitude_path, "amplitude PGM (P5)");
    retrieve->add_option("--phase", opt.phase_path, "phase PGM (P5)");
    retrieve->add_option("--cell", opt.cells, "multiplex cell side");
    retrieve->add_option("--eta", opt.etas, "border fraction");
    retrieve->add_option("--blazed-period", opt.blazed_period, "carrier period in pixels");
    retrieve->add_option("--blazed-axis", opt.blazed_axis, "horizontal|vertical");
    add_common_flags(retrieve, opt);

    CLI::App* repro = app.add_subcommand("repro", "canned experiment reproductions");
    repro->add_option("figure", opt.figure, "fig3|fig4|fig5")->required();
    repro->add_option("--eta", opt.etas, "override the per-cell eta schedule (fig5)");
    repro->add_option("--blazed-period", opt.blazed_period, "carrier period in pixels");
    repro->add_option("--blazed-axis", opt.blazed_axis, "horizontal|vertical");
    add_common_flags(repro, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* cmd = app.get_subcommands().front();
        apply_config(*cmd, opt);
        if (cmd == sweep) return cmd_sweep(opt);
        if (cmd == calibrate) return cmd_calibrate(*cmd, opt);
        if (cmd == encode) return cmd_encode(opt);
        if (cmd == retrieve) return cmd_retrieve(opt);
        if (cmd == repro) {
            if (opt.figure == "fig3") return repro_fig3(*cmd, opt);
            if (opt.figure == "fig4") return repro_fig4(*cmd, opt);
            if (opt.figure == "fig5") return repro_fig5(*cmd, opt);
            throw std::invalid_argument("unknown figure '" + opt.figure +
                                        "', expected fig3|fig4|fig5");
        }
        return 1;
    } catch (const PgmError& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.status()) {
            case PgmStatus::missing_file: return 3;
            case PgmStatus::bad_header: return 4;
            case PgmStatus::unsupported_depth: return 5;
            case PgmStatus::truncated_data: return 6;
            case PgmStatus::io_failure: return 7;
        }
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
