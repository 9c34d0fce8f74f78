#include "incomplete/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "incomplete/inference.hpp"
#include "incomplete/model.hpp"
#include "incomplete/report_json.hpp"
#include "incomplete/statistic.hpp"
#include "incomplete/transport.hpp"

namespace incomplete {

namespace {

std::vector<double> parse_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open data file '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        // Trim whitespace and tolerate trailing commas/CR.
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                                 line.back() == '\t' || line.back() == ','))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const std::string cell = line.substr(start);
        try {
            std::size_t pos = 0;
            const double v = std::stod(cell, &pos);
            if (pos != cell.size())
                throw std::invalid_argument("trailing characters");
            values.push_back(v);
        } catch (const std::exception&) {
            throw DataError("data file '" + path + "': non-numeric cell at row " +
                            std::to_string(row) + ", column 1");
        }
    }
    if (values.empty()) throw DataError("data file '" + path + "': empty sample");
    return values;
}

std::vector<double> parse_weight_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(flag + ": bad number '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError(flag + ": empty list");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LatentLaw parse_latent_law(const std::string& text) {
    if (text.rfind("uniform:", 0) == 0) {
        const std::string rest = text.substr(8);
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw ConfigError("--latent-law uniform needs 'uniform:a,b'");
        try {
            return LatentLaw::uniform(std::stod(rest.substr(0, comma)),
                                      std::stod(rest.substr(comma + 1)));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("--latent-law: ") + e.what());
        }
    }
    if (text.rfind("power:", 0) == 0) {
        try {
            return LatentLaw::power(std::stod(text.substr(6)));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("--latent-law: ") + e.what());
        }
    }
    throw ConfigError("--latent-law must be uniform:a,b or power:phi, got '" + text + "'");
}

struct ModelFlags {
    std::string model;
    double lambda = 0.5;
    double phi = 1.0;
    std::string nu;
    std::string latent_law = "uniform:0,1";
};

struct QuantileFlags {
    std::string method = "bridge";
    double alpha = 0.95;
    std::size_t reps = 1000;
    std::size_t subsample_count = 500;
    std::size_t subsample_size = 0;
    double bandwidth_c = 0.5;
    double bandwidth_gamma = 0.25;
};

std::unique_ptr<Model> build_model(const ModelFlags& flags) {
    if (flags.model == "entry-game") {
        try {
            return entry_game_model(flags.lambda, flags.phi);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (flags.model.rfind("finite:", 0) == 0) {
        if (flags.nu.empty())
            throw ConfigError("finite models need --nu latent weights");
        try {
            FiniteCorrespondence corr =
                FiniteCorrespondence::from_json_text(read_file(flags.model.substr(7)));
            std::vector<double> weights = parse_weight_list(flags.nu, "--nu");
            DiscreteMeasure nu(corr.u_labels(), std::move(weights));
            return std::make_unique<FiniteModel>(std::move(corr), std::move(nu));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("finite model: ") + e.what());
        }
    }
    if (flags.model.rfind("interval:", 0) == 0) {
        try {
            IntervalCorrespondence corr =
                IntervalCorrespondence::from_json_text(read_file(flags.model.substr(9)));
            return std::make_unique<IntervalModel>(std::move(corr),
                                                   parse_latent_law(flags.latent_law));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("interval model: ") + e.what());
        }
    }
    throw ConfigError("--model must be entry-game, finite:FILE or interval:FILE, got '" +
                      flags.model + "'");
}

SetFamily resolve_family(const std::string& family_flag, const Model& model) {
    if (!family_flag.empty()) {
        try {
            return SetFamily::parse(family_flag);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    SetFamily fam;
    if (std::holds_alternative<FiniteCarrier>(model.carrier())) {
        const auto& finite = std::get<FiniteCarrier>(model.carrier());
        fam.kind = finite.labels.size() <= 24 ? FamilyKind::PowerSet : FamilyKind::Cells;
    } else {
        fam.kind = FamilyKind::Cells;
    }
    return fam;
}

/// Validates sample values against a finite carrier, reporting the first
/// offending row of the original file order.
void check_sample_in_carrier(const std::vector<double>& rows, const Model& model,
                             const std::string& path) {
    const auto* finite = std::get_if<FiniteCarrier>(&model.carrier());
    if (finite) {
        if (!finite->values)
            throw ConfigError("model carrier has non-numeric atoms; cannot ingest samples");
        const auto& values = *finite->values;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const bool ok = std::any_of(values.begin(), values.end(), [&](double v) {
                return std::abs(v - rows[i]) <= 1e-9;
            });
            if (!ok)
                throw DataError("data file '" + path + "': value " + std::to_string(rows[i]) +
                                " at row " + std::to_string(i + 1) +
                                " is not an observable atom of the model");
        }
    } else {
        const auto& real = std::get<RealCarrier>(model.carrier());
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i] < real.lo || rows[i] > real.hi)
                throw DataError("data file '" + path + "': value " + std::to_string(rows[i]) +
                                " at row " + std::to_string(i + 1) +
                                " is outside the model's observable domain");
    }
}

QuantileOptions make_options(const QuantileFlags& flags, std::uint64_t seed) {
    QuantileOptions opt;
    opt.method = flags.method;
    opt.alpha = flags.alpha;
    opt.reps = flags.reps;
    opt.subsample_count = flags.subsample_count;
    opt.subsample_size = flags.subsample_size;
    opt.bandwidth_c = flags.bandwidth_c;
    opt.bandwidth_gamma = flags.bandwidth_gamma;
    opt.seed = seed;
    if (opt.method != "bridge" && opt.method != "subsample")
        throw ConfigError("--quantile must be bridge or subsample");
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0))
        throw ConfigError("--alpha must be in (0,1)");
    return opt;
}

OrderedJson quantile_config(const QuantileOptions& opt, std::size_t n) {
    OrderedJson j;
    j["method"] = opt.method;
    j["alpha"] = opt.alpha;
    if (opt.method == "bridge") {
        j["reps"] = opt.reps;
        j["bandwidth_c"] = opt.bandwidth_c;
        j["bandwidth_gamma"] = opt.bandwidth_gamma;
        j["bandwidth"] = default_bandwidth(n, opt.bandwidth_c, opt.bandwidth_gamma);
    } else {
        j["subsample_count"] = opt.subsample_count;
        j["subsample_size"] =
            opt.subsample_size > 0 ? opt.subsample_size : default_subsample_size(n);
    }
    return j;
}

OrderedJson model_config(const ModelFlags& flags) {
    OrderedJson j;
    j["model"] = flags.model;
    if (flags.model == "entry-game") {
        j["lambda"] = flags.lambda;
        j["phi"] = flags.phi;
    }
    if (flags.model.rfind("finite:", 0) == 0) j["nu"] = flags.nu;
    if (flags.model.rfind("interval:", 0) == 0) j["latent_law"] = flags.latent_law;
    return j;
}

void emit(const OrderedJson& document, const std::string& output_path) {
    const std::string text = document.dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        if (!out) throw ConfigError("cannot write output file '" + output_path + "'");
        out << text;
    }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("INCOMPLETE_INFER_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("INCOMPLETE_INFER_SEED is not a number: '" + std::string(env) +
                              "'");
        }
    }
    return 0;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Specification tests and confidence regions for incomplete structural models"};
    app.require_subcommand(1);

    ModelFlags model_flags;
    QuantileFlags quantile_flags;
    std::string data_path, family_flag, output_path, grid_spec;
    std::optional<std::uint64_t> seed_flag;
    unsigned threads = 1;
    double delta = 0.0;
    double bounds_alpha = 0.95;
    std::size_t resolution = 512;
    std::string p_weights;

    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_flags.model,
                        "entry-game | finite:FILE.json | interval:FILE.json")->required();
        cmd->add_option("--lambda", model_flags.lambda, "entry-game lambda in (0,1]");
        cmd->add_option("--phi", model_flags.phi, "entry-game phi > 0");
        cmd->add_option("--nu", model_flags.nu, "latent weights w1,w2,... for finite models");
        cmd->add_option("--latent-law", model_flags.latent_law,
                        "uniform:a,b | power:phi for interval models");
    };
    auto add_test_flags = [&](CLI::App* cmd) {
        cmd->add_option("--data", data_path, "CSV sample, one observation per row")->required();
        cmd->add_option("--family", family_flag, "powerset|cells|rectangles|unions:K");
        cmd->add_option("--alpha", quantile_flags.alpha, "test level, default 0.95");
        cmd->add_option("--quantile", quantile_flags.method, "bridge|subsample");
        cmd->add_option("--reps", quantile_flags.reps, "bridge replications");
        cmd->add_option("--subsample-size", quantile_flags.subsample_size,
                        "b_n (default ceil(n^(1/3)))");
        cmd->add_option("--subsample-count", quantile_flags.subsample_count, "B_n");
        cmd->add_option("--bandwidth-c", quantile_flags.bandwidth_c, "h_n = c n^-gamma");
        cmd->add_option("--bandwidth-gamma", quantile_flags.bandwidth_gamma,
                        "gamma in (0, 1/2)");
        cmd->add_option("--seed", seed_flag, "RNG seed (fallback: INCOMPLETE_INFER_SEED)");
        cmd->add_option("--threads", threads, "worker bound, default 1");
        cmd->add_option("--output", output_path, "write the JSON report here");
    };

    CLI::App* test_cmd = app.add_subcommand("test", "specification test at fixed parameters");
    add_model_flags(test_cmd);
    add_test_flags(test_cmd);

    CLI::App* region_cmd =
        app.add_subcommand("region", "confidence region by test inversion over a grid");
    add_model_flags(region_cmd);
    add_test_flags(region_cmd);
    region_cmd->add_option("--grid", grid_spec, "e.g. lambda=0.05:1:0.05,phi=0.25:4:0.25")
        ->required();

    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "mean bounds from bracketed observations");
    bounds_cmd->add_option("--data", data_path, "CSV of bracket centers")->required();
    bounds_cmd->add_option("--delta", delta, "bracket width")->required();
    bounds_cmd->add_option("--alpha", bounds_alpha, "CI level, default 0.95");
    bounds_cmd->add_option("--output", output_path, "write the JSON report here");

    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "transport feasibility check (T*, coupling, witness)");
    add_model_flags(oracle_cmd);
    oracle_cmd->add_option("--p", p_weights, "observable weights w1,w2,...");
    oracle_cmd->add_option("--data", data_path, "CSV sample for the empirical measure");
    oracle_cmd->add_option("--resolution", resolution,
                           "latent grid cells for continuous models, default 512");
    oracle_cmd->add_option("--output", output_path, "write the JSON report here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    const std::uint64_t seed = resolve_seed(seed_flag);

    if (test_cmd->parsed() || region_cmd->parsed()) {
        const std::unique_ptr<Model> model = build_model(model_flags);
        const std::vector<double> rows = parse_csv_rows(data_path);
        check_sample_in_carrier(rows, *model, data_path);
        std::vector<double> sample = rows;
        std::sort(sample.begin(), sample.end());
        const SetFamily fam = resolve_family(family_flag, *model);
        const QuantileOptions opt = make_options(quantile_flags, seed);

        OrderedJson config;
        config["command"] = test_cmd->parsed() ? "test" : "region";
        config["model"] = model_config(model_flags);
        config["data"] = data_path;
        config["n"] = sample.size();
        config["family"] = fam.to_string();
        config["quantile"] = quantile_config(opt, sample.size());
        config["seed"] = seed;
        config["threads"] = threads;
        if (!output_path.empty()) config["output"] = output_path;

        OrderedJson document;
        if (test_cmd->parsed()) {
            const TestReport report = specification_test(sample, *model, fam, opt);
            document["config"] = config;
            document["report"] = to_json(report);
        } else {
            if (model_flags.model != "entry-game")
                throw ConfigError("region requires the parametric entry-game model");
            ParamGrid grid;
            try {
                grid = ParamGrid::parse(grid_spec);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            if (grid.axis_names.size() != 2 ||
                grid.axis_names[0] != "lambda" || grid.axis_names[1] != "phi")
                throw ConfigError("entry-game grids use axes lambda and phi, in that order");
            for (double v : grid.axis_values[0])
                if (!(v > 0.0 && v <= 1.0))
                    throw ConfigError("grid lambda=" + std::to_string(v) +
                                      " outside the model domain (0,1]");
            for (double v : grid.axis_values[1])
                if (!(v > 0.0))
                    throw ConfigError("grid phi=" + std::to_string(v) +
                                      " outside the model domain (0,inf)");
            const ModelFactory factory = [](const std::vector<double>& theta) {
                return std::unique_ptr<Model>(entry_game_model(theta[0], theta[1]));
            };
            const RegionReport report =
                confidence_region(sample, factory, grid, fam, opt, threads);
            config["grid"] = grid_spec;
            document["config"] = config;
            document["report"] = to_json(report);
        }
        emit(document, output_path);
        return 0;
    }

    if (bounds_cmd->parsed()) {
        const std::vector<double> rows = parse_csv_rows(data_path);
        BoundsReport report;
        try {
            report = censored_mean_bounds(rows, delta, bounds_alpha);
        } catch (const std::invalid_argument& e) {
            // delta <= 0 or bad alpha is a config problem; overlap is data.
            const std::string what = e.what();
            if (what.find("overlap") != std::string::npos) throw DataError(what);
            throw ConfigError(what);
        }
        OrderedJson config;
        config["command"] = "bounds";
        config["data"] = data_path;
        config["n"] = report.n;
        config["delta"] = delta;
        config["alpha"] = bounds_alpha;
        if (!output_path.empty()) config["output"] = output_path;
        OrderedJson document;
        document["config"] = config;
        document["report"] = to_json(report);
        emit(document, output_path);
        return 0;
    }

    // oracle
    const std::unique_ptr<Model> model = build_model(model_flags);
    FiniteCorrespondence const* finite_corr = nullptr;
    std::optional<FiniteCorrespondence> owned_corr;
    std::optional<DiscreteMeasure> nu;
    if (const auto* fm = dynamic_cast<const FiniteModel*>(model.get())) {
        finite_corr = &fm->correspondence();
        nu = fm->nu();
    } else if (const auto* ivm = dynamic_cast<const IntervalValuedModel*>(model.get())) {
        auto [corr, cell_law] = discretize(*ivm, resolution);
        owned_corr = std::move(corr);
        finite_corr = &*owned_corr;
        nu = std::move(cell_law);
    } else {
        throw ConfigError("oracle supports entry-game and finite models");
    }

    std::optional<DiscreteMeasure> p;
    if (!p_weights.empty()) {
        try {
            p.emplace(parse_weight_list(p_weights, "--p"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("--p: ") + e.what());
        }
        if (p->size() != finite_corr->y_size())
            throw ConfigError("--p needs " + std::to_string(finite_corr->y_size()) +
                              " weights");
    } else if (!data_path.empty()) {
        const std::vector<double> rows = parse_csv_rows(data_path);
        check_sample_in_carrier(rows, *model, data_path);
        const auto& values = *std::get<FiniteCarrier>(model->carrier()).values;
        std::vector<double> counts(values.size(), 0.0);
        for (double v : rows) {
            const auto it =
                std::min_element(values.begin(), values.end(), [&](double a, double b) {
                    return std::abs(a - v) < std::abs(b - v);
                });
            counts[static_cast<std::size_t>(it - values.begin())] += 1.0;
        }
        for (double& c : counts) c /= static_cast<double>(rows.size());
        p.emplace(std::move(counts));
    } else {
        throw ConfigError("oracle needs --p weights or --data");
    }

    const CouplingResult result = feasible_coupling(*p, *nu, *finite_corr);
    OrderedJson config;
    config["command"] = "oracle";
    config["model"] = model_config(model_flags);
    if (!p_weights.empty()) config["p"] = p_weights;
    if (!data_path.empty()) config["data"] = data_path;
    if (dynamic_cast<const IntervalValuedModel*>(model.get())) config["resolution"] = resolution;
    config["seed"] = seed;
    if (!output_path.empty()) config["output"] = output_path;
    OrderedJson document;
    document["config"] = config;
    document["report"] = to_json(result);
    emit(document, output_path);
    return 0;
}

} // namespace

std::vector<double> ingest_sample(const std::string& path) {
    std::vector<double> rows = parse_csv_rows(path);
    std::sort(rows.begin(), rows.end());
    return rows;
}

int run_cli(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace incomplete
