#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "multiport/devices.hpp"
#include "multiport/fisher.hpp"
#include "multiport/fock.hpp"
#include "multiport/fringes.hpp"
#include "multiport/multiparameter.hpp"
#include "multiport/protocol.hpp"
#include "multiport/visibility.hpp"

namespace multiport::cli {

using nlohmann::json;

namespace {

constexpr double kResidualLimit = 1e-10;
constexpr double kClosedFormLimit = 1e-9;
constexpr double kNonclassicalMargin = 1e-9;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json real_matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

std::string column_name(const FockState& s) {
    std::string name = "P";
    for (int n : s.occupations()) name += "_" + std::to_string(n);
    return name;
}

InterferometerSpec single_phase_spec(const RunConfig& c) {
    return InterferometerSpec::mach_zehnder(parse_splitter_kind(c.device));
}

FockState input_state(const RunConfig& c, std::size_t modes) {
    if (c.input.empty()) return ones_state(modes);
    FockState s = parse_fock_state(c.input);
    if (s.mode_count() != modes)
        throw std::invalid_argument("input " + c.input + " needs " + std::to_string(modes) + " modes");
    return s;
}

// "1", "0.5-0.25i", "2i"; comma separated.
CVector parse_amplitudes(const std::string& text, std::size_t modes) {
    if (text.empty()) return CVector::Ones(static_cast<Eigen::Index>(modes));
    std::vector<Complex> values;
    std::stringstream list(text);
    std::string item;
    while (std::getline(list, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) throw std::invalid_argument("empty coherent amplitude in '" + text + "'");
        Complex z = 0.0;
        if (item.back() == 'i') {
            const std::string body = item.substr(0, item.size() - 1);
            std::size_t split = std::string::npos;
            for (std::size_t k = body.size(); k-- > 1;)
                if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                    split = k;
                    break;
                }
            const std::string re = split == std::string::npos ? "" : body.substr(0, split);
            std::string im = split == std::string::npos ? body : body.substr(split);
            if (im.empty() || im == "+" || im == "-") im += "1";
            z = Complex(re.empty() ? 0.0 : std::stod(re), std::stod(im));
        } else {
            std::size_t used = 0;
            z = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument("bad coherent amplitude '" + item + "'");
        }
        values.push_back(z);
    }
    if (values.size() != modes)
        throw std::invalid_argument("coherent input needs " + std::to_string(modes) + " amplitudes");
    CVector v(static_cast<Eigen::Index>(modes));
    for (std::size_t i = 0; i < modes; ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return v;
}

std::vector<std::size_t> parse_modes(const std::string& text, SplitterKind kind) {
    if (text.empty()) {
        // the first mode is the phase reference; the last two carry the phases
        const std::size_t m = mode_count(kind);
        return {m - 2, m - 1};
    }
    const FockState list = parse_fock_state(text);
    std::vector<std::size_t> modes;
    for (int k : list.occupations()) {
        if (k < 1) throw std::invalid_argument("phase modes are 1-based");
        modes.push_back(static_cast<std::size_t>(k - 1));
    }
    return modes;
}

json modes_json(const std::vector<std::size_t>& modes) {
    json j = json::array();
    for (std::size_t k : modes) j.push_back(k + 1);
    return j;
}

// Gamma cache ---------------------------------------------------------------

std::string golden_path(const RunConfig& c) {
    if (!c.goldens.empty()) return c.goldens;
    if (const char* dir = std::getenv(kGoldenDirVariable); dir && *dir)
        return (std::filesystem::path(dir) / ("gamma_" + c.device + ".json")).string();
    return {};
}

json options_json(const ClassicalBoundOptions& o) {
    return {{"amplitude_max", o.amplitude_max},
            {"amplitude_step", o.amplitude_step},
            {"phase_divisions", o.phase_divisions},
            {"refinements", o.refinements},
            {"final_step", o.final_step}};
}

struct CachedGamma {
    double gamma;
    json alpha;
};

std::map<std::string, CachedGamma> read_cache(const std::string& path, const std::string& device,
                                              const ClassicalBoundOptions& options) {
    std::map<std::string, CachedGamma> out;
    if (path.empty() || !std::filesystem::exists(path)) return out;
    std::ifstream file(path);
    const json doc = json::parse(file);
    if (doc.value("device", "") != device || doc.value("options", json()) != options_json(options)) return out;
    for (const json& b : doc.at("bounds")) out[b.at("outcome").get<std::string>()] = {b.at("gamma"), b.at("alpha")};
    return out;
}

void write_cache(const std::string& path, const std::string& device, const ClassicalBoundOptions& options,
                 const std::map<std::string, CachedGamma>& bounds) {
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["device"] = device;
    doc["options"] = options_json(options);
    doc["bounds"] = json::array();
    for (const auto& [outcome, g] : bounds)
        doc["bounds"].push_back({{"outcome", outcome}, {"gamma", g.gamma}, {"alpha", g.alpha}});
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write Gamma cache " + path);
    file << doc.dump(2) << "\n";
}

}  // namespace

int devices_check(const RunConfig& config, Report& report, bool inject_fault) {
    json& r = report.result();
    Table& t = report.table();
    t.columns = {"device", "row", "col", "re", "im", "abs2"};
    bool ok = true;
    r["threshold"] = kResidualLimit;
    r["devices"] = json::array();
    for (SplitterKind kind : {SplitterKind::tritter, SplitterKind::quarter}) {
        CMatrix m = splitter(kind).matrix();
        if (inject_fault && kind == SplitterKind::tritter) m(0, 0) += Complex(1e-3, 0.0);
        json d;
        d["name"] = to_string(kind);
        d["matrix"] = matrix_json(m);
        const double unitarity = unitarity_residual(m);
        d["unitarity_residual"] = unitarity;
        ok = ok && unitarity <= kResidualLimit;
        if (kind == SplitterKind::quarter) {
            const CMatrix id = CMatrix::Identity(m.rows(), m.cols());
            const double involution = (m * m - id).cwiseAbs().maxCoeff();
            d["involution_residual"] = involution;
            ok = ok && involution <= kResidualLimit;
        }
        r["devices"].push_back(d);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                t.add({to_string(kind), std::to_string(i + 1), std::to_string(j + 1), number(m(i, j).real()),
                       number(m(i, j).imag()), number(std::norm(m(i, j)))});
    }
    r["ok"] = ok;
    (void)config;
    return ok ? kExitOk : kExitViolation;
}

int fringes(const RunConfig& config, Report& report) {
    const InterferometerSpec spec = single_phase_spec(config);
    const FockState input = input_state(config, spec.mode_count());
    const PhaseGrid grid = parse_phase_grid(config.grid);

    // samples on the requested grid; Fourier tables from a full-period model
    const FringeEvaluator evaluator(spec, input);
    const FringeModel model(spec, input);
    std::vector<FringePattern> patterns;
    if (config.outcome == "all") {
        for (const FockState& o : evaluator.basis().states()) patterns.push_back({o, {}, {}});
    } else {
        const FockState o = parse_fock_state(config.outcome);
        if (!evaluator.basis().contains(o))
            throw std::invalid_argument("outcome " + o.to_string() + " is not reachable from input " + input.to_string());
        patterns.push_back({o, {}, {}});
    }
    for (std::size_t i = 0; i < grid.count; ++i) {
        const std::vector<double> p = evaluator.probabilities(grid[i]);
        for (FringePattern& f : patterns) f.samples.push_back({grid[i], p[evaluator.basis().index_of(f.outcome)]});
    }
    for (FringePattern& f : patterns) f.fourier = model.series()[model.index_of(f.outcome)];

    json& r = report.result();
    r["device"] = to_string(spec.kind());
    r["input"] = input.to_string();
    r["grid"] = {{"start", grid.start}, {"stop", grid.stop}, {"count", grid.count}};
    r["phases"] = grid.points();
    r["outcomes"] = json::array();
    for (const FringePattern& p : patterns) {
        json o;
        o["outcome"] = p.outcome.to_string();
        json probs = json::array();
        for (const FringeSample& s : p.samples) probs.push_back(s.probability);
        o["probabilities"] = probs;
        json terms = json::array();
        const FourierSeries series = p.fourier.truncated(input.photon_number());
        for (const FourierTerm& term : series.terms())
            terms.push_back({{"harmonic", term.harmonic}, {"amplitude", term.amplitude}, {"offset", term.offset}});
        o["fourier"] = terms;
        if (input.photon_number() > 0 && p.fourier.amplitude(0) > 1e-15)
            o["visibility"] = n_fold_visibility(p).visibility;
        r["outcomes"].push_back(o);
    }
    if (config.outcome == "all") {
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.count; ++i) {
            double sum = 0.0;
            for (const FringePattern& p : patterns) sum += p.samples[i].probability;
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        r["row_sum_max_deviation"] = worst;
    }

    Table& t = report.table();
    t.columns = {"phi"};
    for (const FringePattern& p : patterns) t.columns.push_back(column_name(p.outcome));
    for (std::size_t i = 0; i < grid.count; ++i) {
        std::vector<std::string> row{number(grid[i])};
        for (const FringePattern& p : patterns) row.push_back(number(p.samples[i].probability));
        t.add(std::move(row));
    }

    if (!config.check_closed_form) return kExitOk;
    if (input != ones_state(spec.mode_count()))
        throw std::invalid_argument("closed forms are tabulated for the all-ones input only");
    json check;
    check["tolerance"] = kClosedFormLimit;
    check["outcomes"] = json::array();
    double worst = 0.0;
    for (const FringePattern& p : patterns) {
        if (!has_closed_form(spec.kind(), p.outcome)) continue;
        const double dev = closed_form_check(p.outcome, spec);
        worst = std::max(worst, dev);
        check["outcomes"].push_back({{"outcome", p.outcome.to_string()}, {"max_deviation", dev}});
    }
    check["max_deviation"] = worst;
    check["ok"] = worst <= kClosedFormLimit;
    r["closed_form"] = check;
    return worst <= kClosedFormLimit ? kExitOk : kExitViolation;
}

int visibility(const RunConfig& config, Report& report) {
    const InterferometerSpec spec = single_phase_spec(config);
    const FockState input = input_state(config, spec.mode_count());
    if (input.photon_number() == 0) throw std::invalid_argument("visibility needs at least one photon");
    const std::vector<FockState> classes = outcome_classes(spec.mode_count(), input.photon_number());
    const ClassicalBoundOptions options;
    const std::string cache_path = golden_path(config);

    std::map<std::string, CachedGamma> cache = read_cache(cache_path, config.device, options);
    std::vector<FockState> missing;
    for (const FockState& o : classes)
        if (!cache.count(o.to_string())) missing.push_back(o);
    const bool reused = missing.empty();
    if (!missing.empty()) {
        for (const ClassicalBound& b : classical_visibility_bounds(spec, missing, options)) {
            json alpha = json::array();
            for (Complex z : b.best_alpha) alpha.push_back(complex_json(z));
            cache[b.outcome.to_string()] = {b.gamma, alpha};
        }
        if (!cache_path.empty()) write_cache(cache_path, config.device, options, cache);
    }

    json& r = report.result();
    r["device"] = config.device;
    r["input"] = input.to_string();
    r["gamma_cache"] = {{"path", cache_path}, {"reused", reused}};
    r["outcomes"] = json::array();
    Table& t = report.table();
    t.columns = {"outcome", "A0", "AN", "visibility", "gamma", "nonclassical"};
    const PhaseGrid grid = PhaseGrid::full_period(FringeModel::kGridPoints);
    for (const FockState& o : classes) {
        const FringePattern p = fringe_scan(spec, input, o, grid);
        const int n = input.photon_number();
        const CachedGamma& g = cache.at(o.to_string());
        json entry;
        entry["outcome"] = o.to_string();
        entry["A0"] = p.fourier.amplitude(0);
        entry["AN"] = p.fourier.amplitude(n);
        entry["gamma"] = g.gamma;
        entry["gamma_alpha"] = g.alpha;
        std::string v_text = "nan";
        std::string flag = "undefined";
        if (p.fourier.amplitude(0) > 1e-15) {
            const double v = n_fold_visibility(p).visibility;
            const bool nonclassical = v > g.gamma + kNonclassicalMargin;
            entry["visibility"] = v;
            entry["nonclassical"] = nonclassical;
            v_text = number(v);
            flag = nonclassical ? "true" : "false";
        } else {
            entry["visibility"] = nullptr;
            entry["nonclassical"] = nullptr;
        }
        r["outcomes"].push_back(entry);
        t.add({"\"" + o.to_string() + "\"", number(p.fourier.amplitude(0)), number(p.fourier.amplitude(n)), v_text,
               number(g.gamma), flag});
    }
    return kExitOk;
}

int fisher(const RunConfig& config, Report& report) {
    const InterferometerSpec spec = single_phase_spec(config);
    const std::size_t mode = spec.primary_phase_mode();
    const PhaseGrid grid = parse_phase_grid(config.grid);
    json& r = report.result();
    Table& t = report.table();
    r["device"] = config.device;
    r["probe"] = config.probe;
    r["phase_mode"] = mode + 1;
    r["phases"] = grid.points();

    if (config.probe == "fock") {
        const FockState input = input_state(config, spec.mode_count());
        const FringeModel model(spec, input);
        const double h = qfi_fock(spec, input, mode);
        r["input"] = input.to_string();
        r["qfi"] = h;
        json info = json::array();
        double best = -1.0;
        t.columns = {"phi", "I", "H"};
        for (std::size_t i = 0; i < grid.count; ++i) {
            const double value = cfi_photon_counting(model, grid[i]);
            best = std::max(best, value);
            info.push_back(value);
            t.add({number(grid[i]), number(value), number(h)});
        }
        r["cfi"] = info;
        r["cfi_max"] = best;
        json argmax = json::array();
        for (std::size_t i = 0; i < grid.count; ++i)
            if (info[i].get<double>() >= best - 1e-9) argmax.push_back(grid[i]);
        r["cfi_argmax"] = argmax;
        return kExitOk;
    }

    if (config.probe != "coherent_ref" && config.probe != "coherent_avg")
        throw std::invalid_argument("unknown probe '" + config.probe + "' (expected fock, coherent_ref or coherent_avg)");
    const CVector alpha = parse_amplitudes(config.alpha, spec.mode_count());
    const CoherentState state(alpha);
    const double h_ref = qfi_coherent(spec, state, mode, true);
    const double h_avg = qfi_coherent(spec, state, mode, false);
    const double h = config.probe == "coherent_ref" ? h_ref : h_avg;
    json alpha_json = json::array();
    for (Eigen::Index i = 0; i < alpha.size(); ++i) alpha_json.push_back(complex_json(alpha(i)));
    r["alpha"] = alpha_json;
    r["mean_photons"] = state.mean_photon_number();
    r["qfi"] = h;
    r["qfi_reference"] = h_ref;
    r["qfi_phase_averaged"] = h_avg;

    const QfiComparison cmp = compare_qfi(spec, ones_state(spec.mode_count()), alpha, mode);
    auto norm_json = [](const QfiComparison::Normalized& n) {
        return json{{"scale", n.scale},
                    {"total_mean_photons", n.total_mean},
                    {"phase_mode_mean_photons", n.phase_mode_mean},
                    {"qfi_reference", n.with_reference},
                    {"qfi_phase_averaged", n.without_reference}};
    };
    r["comparison"] = {{"fock_input", ones_state(spec.mode_count()).to_string()},
                       {"fock_qfi", cmp.fock},
                       {"fock_phase_mode_mean_photons", cmp.fock_phase_mode_mean},
                       {"equal_total_photons", norm_json(cmp.equal_total)},
                       {"equal_phase_mode_photons", norm_json(cmp.equal_phase_mode)}};

    t.columns = {"phi", "I", "H", "H_ref", "H_avg"};
    json info = json::array();
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double value = cfi_coherent(spec, state, grid[i]);
        info.push_back(value);
        t.add({number(grid[i]), number(value), number(h), number(h_ref), number(h_avg)});
    }
    r["cfi"] = info;
    return kExitOk;
}

int protocol(const RunConfig& config, Report& report) {
    if (config.device != "tritter") throw std::invalid_argument("the adaptive protocol is defined for the tritter");
    ProtocolConfig pc;
    pc.measurements = config.measurements;
    pc.grid_size = config.grid_size;
    pc.seed = config.seed;
    pc.validate();
    const bool adaptive = config.mode == "adaptive" || config.mode == "both";
    const bool control = config.mode == "nonadaptive" || config.mode == "both";
    if (!adaptive && !control)
        throw std::invalid_argument("unknown mode '" + config.mode + "' (expected adaptive, nonadaptive or both)");
    if (config.phases == 0) throw std::invalid_argument("need at least one phase");

    const MonteCarloTable table = monte_carlo(pc, protocol_phase_grid(config.phases), config.trials, adaptive, control);

    json& r = report.result();
    r["measurements"] = pc.measurements;
    r["step_shots"] = {pc.step1_shots(), pc.step2_shots(), pc.step3_shots()};
    r["step2_feedback"] = pc.step2_feedback;
    r["working_point"] = pc.working_point;
    r["working_offset_sigmas"] = pc.working_offset_sigmas;
    r["working_offset_max"] = pc.working_offset_max;
    r["posterior_grid"] = pc.grid_size;
    r["trials"] = table.trials;
    r["qfi"] = table.qfi;
    r["rows"] = json::array();
    Table& t = report.table();
    t.columns = {"phi", "qcr", "cr", "sql"};
    for (const char* m : {"adaptive", "nonadaptive"}) {
        if ((std::string(m) == "adaptive" && !adaptive) || (std::string(m) == "nonadaptive" && !control)) continue;
        for (const char* f : {"rms", "rms_se", "bias", "bias_se", "mean_sigma"})
            t.columns.push_back(std::string(m) + "_" + f);
    }
    auto stats_json = [](const ModeStatistics& s) {
        return json{{"rms", s.rms},
                    {"rms_stderr", s.rms_stderr},
                    {"bias", s.bias},
                    {"bias_stderr", s.bias_stderr},
                    {"mean_sigma", s.mean_sigma}};
    };
    auto stats_cells = [](std::vector<std::string>& row, const ModeStatistics& s) {
        for (double v : {s.rms, s.rms_stderr, s.bias, s.bias_stderr, s.mean_sigma}) row.push_back(number(v));
    };

    bool ok = true;
    json violations = json::array();
    for (const MonteCarloRow& row : table.rows) {
        json j{{"phi", row.phase}, {"qcr", row.qcr_bound}, {"cr", row.cr_bound}, {"sql", row.sql_bound}};
        std::vector<std::string> cells{number(row.phase), number(row.qcr_bound), number(row.cr_bound),
                                       number(row.sql_bound)};
        if (adaptive) {
            j["adaptive"] = stats_json(row.adaptive);
            stats_cells(cells, row.adaptive);
        }
        if (control) {
            j["nonadaptive"] = stats_json(row.nonadaptive);
            stats_cells(cells, row.nonadaptive);
        }
        r["rows"].push_back(j);
        t.add(std::move(cells));

        if (config.self_check && adaptive) {
            const ModeStatistics& a = row.adaptive;
            if (!std::isfinite(a.rms) || a.mean_sigma <= 0.0)
                violations.push_back({{"phi", row.phase}, {"check", "finite estimates"}});
            if (a.rms >= row.sql_bound) violations.push_back({{"phi", row.phase}, {"check", "adaptive below SQL"}});
            if (control && a.rms > row.nonadaptive.rms + 3.0 * std::hypot(a.rms_stderr, row.nonadaptive.rms_stderr))
                violations.push_back({{"phi", row.phase}, {"check", "adaptive not worse than control"}});
        }
    }
    if (config.self_check) {
        ok = violations.empty();
        r["self_check"] = {{"ok", ok}, {"violations", violations}};
    }
    return ok ? kExitOk : kExitViolation;
}

int multiparam(const RunConfig& config, Report& report) {
    const SplitterKind kind = parse_splitter_kind(config.device);
    const std::vector<std::size_t> modes = parse_modes(config.modes, kind);
    const InterferometerSpec spec = InterferometerSpec::multi_phase(kind, modes);
    const FockState input = input_state(config, spec.mode_count());
    const double m = static_cast<double>(config.measurements);

    json& r = report.result();
    r["device"] = config.device;
    r["modes"] = modes_json(modes);
    r["probe"] = config.probe;
    r["measurements"] = m;

    auto bounds_json = [&](const Eigen::MatrixXd& h) {
        const CramerRaoBounds b = cramer_rao_bounds(h, m);
        return json{{"inverse", real_matrix_json(b.inverse)},
                    {"per_parameter", b.per_parameter},
                    {"total_variance", b.total_variance},
                    {"effective_qfi", b.effective_qfi}};
    };
    auto qfim_json = [&](const QfiMatrix& q) {
        json j{{"matrix", real_matrix_json(q.entries)},
               {"symmetry_residual", q.symmetry_residual()},
               {"min_eigenvalue", q.min_eigenvalue()},
               {"zero_photon", q.zero_photon}};
        if (q.sld_entries.size() != 0) {
            j["sld_matrix"] = real_matrix_json(q.sld_entries);
            j["cross_check_residual"] = q.cross_check_residual();
        }
        return j;
    };

    // Fock probe and coherent probes with the same mean photon number
    const QfiMatrix fock = qfim_pure(spec, input, modes);
    const double n_photons = input.photon_number();
    CVector alpha = parse_amplitudes(config.alpha, spec.mode_count());
    if (config.alpha.empty() && n_photons > 0)
        alpha *= std::sqrt(n_photons / static_cast<double>(spec.mode_count()));
    const CoherentState coherent(alpha);
    const QfiMatrix with_ref = qfim_coherent(spec, coherent, modes, true);
    const QfiMatrix without_ref = qfim_coherent(spec, coherent, modes, false);

    double weak = 0.0;
    for (const std::vector<double>& lambda :
         {std::vector<double>(modes.size(), 0.0), std::vector<double>(modes.size(), 0.7)}) {
        weak = std::max(weak, weak_commutativity_residual(spec, input, modes, lambda));
    }

    const QfiMatrix& chosen = config.probe == "fock" ? fock
                              : config.probe == "coherent_ref" ? with_ref
                              : config.probe == "coherent_avg"
                                  ? without_ref
                                  : throw std::invalid_argument("unknown probe '" + config.probe + "'");
    r["input"] = input.to_string();
    r["qfim"] = qfim_json(chosen);
    r["bounds"] = bounds_json(chosen.entries);
    r["generator_commutator_residual"] = GeneratorSet(probe_state(spec, input).basis_ptr(), modes).commutator_residual();
    r["weak_commutativity_residual"] = weak;

    json comparison;
    comparison["mean_photons"] = coherent.mean_photon_number();
    comparison["fock"] = qfim_json(fock);
    comparison["coherent_reference"] = qfim_json(with_ref);
    comparison["coherent_phase_averaged"] = qfim_json(without_ref);
    std::vector<double> eff_f, eff_i, eff_ii;
    try {
        eff_f = cramer_rao_bounds(fock.entries, m).effective_qfi;
        eff_i = cramer_rao_bounds(with_ref.entries, m).effective_qfi;
        eff_ii = cramer_rao_bounds(without_ref.entries, m).effective_qfi;
        bool advantage = true;
        for (std::size_t mu = 0; mu < modes.size(); ++mu) advantage = advantage && eff_f[mu] > eff_ii[mu];
        comparison["effective_qfi"] = {{"fock", eff_f}, {"coherent_reference", eff_i}, {"coherent_phase_averaged", eff_ii}};
        comparison["fock_beats_phase_averaged"] = advantage;
    } catch (const std::domain_error& e) {
        comparison["effective_qfi"] = nullptr;
        comparison["note"] = e.what();
    }
    r["comparison"] = comparison;

    Table& t = report.table();
    t.columns = {"parameter", "mode", "H_diag", "effective_qfi", "bound", "fock_effective", "coherent_ref_effective",
                 "coherent_avg_effective"};
    const CramerRaoBounds b = cramer_rao_bounds(chosen.entries, m);
    for (std::size_t mu = 0; mu < modes.size(); ++mu) {
        t.add({std::to_string(mu + 1), std::to_string(modes[mu] + 1),
               number(chosen.entries(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(mu))),
               number(b.effective_qfi[mu]), number(b.per_parameter[mu]),
               eff_f.empty() ? "nan" : number(eff_f[mu]), eff_i.empty() ? "nan" : number(eff_i[mu]),
               eff_ii.empty() ? "nan" : number(eff_ii[mu])});
    }
    return kExitOk;
}

}  // namespace multiport::cli
