#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.hpp"
#include "keysec/errors.hpp"
#include "keysec/extremal.hpp"
#include "keysec/guarantees.hpp"
#include "keysec/io.hpp"
#include "keysec/lfsr.hpp"
#include "keysec/prob.hpp"
#include "keysec/quantum.hpp"
#include "keysec/random.hpp"
#include "keysec/rational.hpp"
#include "keysec/version.hpp"

namespace {

using keysec::json;

// ---------- output plumbing ----------

struct OutOpts {
    std::string path; // empty = stdout
    std::string format = "json";
};

void add_out_flags(CLI::App* cmd, OutOpts& o,
                   const std::vector<std::string>& formats = {"json", "table"}) {
    cmd->add_option("--output", o.path, "write the report to this file instead of stdout");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
}

void emit_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        std::fputc('\n', stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw keysec::ValidationError("cannot open output file: " + path);
    out << text << '\n';
}

json envelope(const std::string& command, json config, json result, std::string provenance) {
    return json{{"tool", keysec::kToolName},   {"version", keysec::kToolVersion},
                {"command", command},          {"config", std::move(config)},
                {"provenance", std::move(provenance)}, {"result", std::move(result)}};
}

std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    return v.dump();
}

// Aligned columns for an array of flat objects; first-seen key order.
void render_rows(std::ostringstream& os, const json& rows) {
    std::vector<std::string> cols;
    for (const json& row : rows)
        for (auto it = row.begin(); it != row.end(); ++it)
            if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
                cols.push_back(it.key());
    std::vector<std::size_t> width;
    for (const std::string& c : cols) width.push_back(c.size());
    std::vector<std::vector<std::string>> cells;
    for (const json& row : rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            line.push_back(row.contains(cols[i]) ? cell_text(row[cols[i]]) : "");
            width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto pad = [&os](const std::string& s, std::size_t w, bool last) {
        os << s;
        if (!last) os << std::string(w - s.size() + 2, ' ');
    };
    for (std::size_t i = 0; i < cols.size(); ++i) pad(cols[i], width[i], i + 1 == cols.size());
    os << '\n';
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            pad(line[i], width[i], i + 1 == cols.size());
        os << '\n';
    }
}

// key: value lines; arrays of objects become aligned sub-tables.
std::string render_table(const json& env) {
    std::ostringstream os;
    os << env["tool"].get<std::string>() << ' ' << env["version"].get<std::string>() << "  "
       << env["command"].get<std::string>() << '\n';
    os << "config: " << env["config"].dump() << '\n';
    const json& result = env["result"];
    for (auto it = result.begin(); it != result.end(); ++it) {
        if (it.value().is_array() && !it.value().empty() && it.value()[0].is_object()) {
            os << '\n' << it.key() << ":\n";
            render_rows(os, it.value());
        } else {
            os << it.key() << ": " << cell_text(it.value()) << '\n';
        }
    }
    std::string s = os.str();
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

void emit_report(const std::string& command, json config, json result,
                 const std::string& provenance, const OutOpts& out) {
    json env = envelope(command, std::move(config), std::move(result), provenance);
    if (out.format == "table")
        emit_text(render_table(env), out.path);
    else
        emit_text(env.dump(2), out.path);
}

// ---------- input plumbing ----------

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw keysec::ValidationError("cannot open input file: " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::parse_error& e) {
        throw keysec::ValidationError("bad JSON in " + path + ": " + std::string(e.what()));
    }
}

// Accepts plain decimals and the exact power form "2^-k".
double parse_eps(const std::string& s) {
    if (s.rfind("2^", 0) == 0) {
        try {
            std::size_t pos = 0;
            const int e = std::stoi(s.substr(2), &pos);
            if (pos != s.size() - 2) throw std::invalid_argument(s);
            return std::ldexp(1.0, e);
        } catch (const std::exception&) {
            throw keysec::ValidationError("cannot parse exponent in eps value: " + s);
        }
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw keysec::ValidationError("cannot parse eps value: " + s);
    }
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw keysec::ValidationError("cannot parse " + what + " entry: " + item);
        }
    }
    if (out.empty()) throw keysec::ValidationError(what + " list is empty");
    return out;
}

keysec::SubsetMask mask_from_flags(int n, const std::string& mask_csv, int m) {
    if (!mask_csv.empty())
        return keysec::SubsetMask(n, parse_int_list(mask_csv, "mask position"));
    if (m > 0) return keysec::SubsetMask::first_bits(n, m);
    return keysec::SubsetMask::all_bits(n);
}

json dist_metrics(const keysec::ProbVec& p) {
    const double h = keysec::shannon_entropy(p);
    return json{{"n", p.n()},
                {"entropy", h},
                {"ie_per_bit", 1.0 - h / p.n()},
                {"delta_e", keysec::stat_distance_to_uniform(p)},
                {"p1", keysec::guess_prob(p)},
                {"mode_key", keysec::to_hex(keysec::mode_key(p))}};
}

// ---------- subcommand wiring ----------

void add_metrics(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "metrics", "entropy, distance to uniform, and guessing probability of a distribution");
    struct Opts {
        std::string input;
        std::string mask;
        int m = 0;
        OutOpts out;
    };
    auto o = std::make_shared<Opts>();
    cmd->add_option("--input", o->input, "distribution JSON file")->required();
    cmd->add_option("--mask", o->mask, "comma-separated bit positions for a subset report");
    cmd->add_option("--m", o->m, "report the first m bits as the subset");
    add_out_flags(cmd, o->out);
    cmd->callback([o]() {
        const keysec::ProbVec p = keysec::probvec_from_json(load_json_file(o->input));
        json result = dist_metrics(p);
        if (!o->mask.empty() || o->m > 0) {
            const keysec::SubsetMask mask = mask_from_flags(p.n(), o->mask, o->m);
            result["subset"] = json{{"positions", mask.positions},
                                    {"p1", keysec::guess_prob_subset(p, mask)},
                                    {"metrics", dist_metrics(keysec::subset_marginal(p, mask))}};
        }
        emit_report("metrics", json{{"input", o->input}}, std::move(result), "computed", o->out);
    });
}

void add_construct(CLI::App& app) {
    auto* cmd = app.add_subcommand("construct", "worst-case distributions attaining the bounds");
    cmd->require_subcommand(1);

    struct SpikeOpts {
        int n = 8;
        int l = 1;
        OutOpts out;
    };

    auto add_spike = [cmd](const std::string& name, const std::string& help, auto build) {
        auto* sub = cmd->add_subcommand(name, help);
        auto o = std::make_shared<SpikeOpts>();
        sub->add_option("--n", o->n, "key bits")->capture_default_str();
        sub->add_option("--l", o->l, "budget exponent (bound 2^-l)")->capture_default_str();
        add_out_flags(sub, o->out);
        sub->callback([o, name, build]() {
            const keysec::SpikeDist spike = build(o->n, o->l);
            const keysec::RatVec exact = spike.exact();
            const keysec::ProbVec p = spike.dist();
            json result = dist_metrics(p);
            // Headline values come from the exact layer, correctly rounded.
            const keysec::Rat p1 = keysec::rat_guess_prob(exact);
            const keysec::Rat de = keysec::rat_stat_distance_to_uniform(exact);
            result["p1"] = p1.get_d();
            result["delta_e"] = de.get_d();
            result["p1_exact"] = p1.get_str();
            result["delta_e_exact"] = de.get_str();
            result["dist"] = keysec::probvec_to_json(p);
            emit_report("construct " + name, json{{"n", o->n}, {"l", o->l}}, std::move(result),
                        "computed", o->out);
        });
    };
    add_spike("theorem1", "spike saturating a per-bit information budget 2^-l",
              [](int n, int l) { return keysec::theorem1_dist(n, l); });
    add_spike("theorem2", "spike saturating a distance budget 2^-l",
              [](int n, int l) { return keysec::theorem2_dist(n, l); });

    {
        auto* sub = cmd->add_subcommand(
            "theorem3", "uniform key with a deterministic parity extension bit");
        struct Opts {
            int n = 4;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--n", o->n, "base key bits (output key has n+1)")->capture_default_str();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const keysec::ParityExtension ext = keysec::ParityExtension::xor_all(o->n);
            const keysec::RatVec exact = keysec::theorem3_exact(ext);
            const keysec::ProbVec p = keysec::theorem3_dist(ext);
            json result = dist_metrics(p);
            result["extension_bit_prediction"] =
                keysec::rat_conditional_bit_prediction(exact, o->n).get_str();
            result["ie_per_bit_exact"] = [&] {
                const auto h = keysec::dyadic_entropy(exact);
                const keysec::Rat ie = (keysec::Rat(o->n + 1) - *h) / keysec::Rat(o->n + 1);
                return ie.get_str();
            }();
            result["dist"] = keysec::probvec_to_json(p);
            emit_report("construct theorem3", json{{"n", o->n}}, std::move(result), "computed",
                        o->out);
        });
    }

    {
        auto* sub = cmd->add_subcommand(
            "search", "maximize subset guessing probability under a criterion budget");
        struct Opts {
            std::string criterion = "delta_e";
            std::string eps = "0.1";
            int n = 4;
            int m = 0;
            std::string mask;
            int iterations = 16;
            std::uint64_t seed = 1;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--criterion", o->criterion, "budget kind: ie_per_bit or delta_e")
            ->check(CLI::IsMember({"ie_per_bit", "ie", "delta_e", "delta"}))
            ->capture_default_str();
        sub->add_option("--eps", o->eps, "budget value; accepts 2^-k")->capture_default_str();
        sub->add_option("--n", o->n, "key bits")->capture_default_str();
        sub->add_option("--m", o->m, "objective subset = first m bits (default: whole key)");
        sub->add_option("--mask", o->mask, "objective subset as comma-separated positions");
        sub->add_option("--iterations", o->iterations, "random restarts")->capture_default_str();
        sub->add_option("--seed", o->seed, "search seed")->capture_default_str();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            keysec::SearchConfig cfg;
            cfg.constraint = (o->criterion == "delta_e" || o->criterion == "delta")
                                 ? keysec::ConstraintKind::StatDistanceToUniform
                                 : keysec::ConstraintKind::MutualInfoPerBit;
            cfg.epsilon = parse_eps(o->eps);
            cfg.n = o->n;
            cfg.mask = mask_from_flags(o->n, o->mask, o->m);
            cfg.iterations = o->iterations;
            cfg.seed = o->seed;
            const keysec::SearchCertificate cert = keysec::subset_leak_search(cfg);
            json config{{"criterion", o->criterion}, {"eps", cfg.epsilon},     {"n", o->n},
                        {"mask", cfg.mask.positions}, {"iterations", o->iterations},
                        {"seed", o->seed}};
            emit_report("construct search", std::move(config), keysec::certificate_to_json(cert),
                        "computed", o->out);
        });
    }
}

void add_lfsr(CLI::App& app) {
    auto* cmd = app.add_subcommand("lfsr", "keystream registers and known-plaintext recovery");
    cmd->require_subcommand(1);

    {
        auto* sub = cmd->add_subcommand("generate", "emit a keystream window");
        struct Opts {
            int width = 4;
            std::string taps = "0x9";
            std::string seed = "0x1";
            int len = 16;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--width", o->width, "register width")->capture_default_str();
        sub->add_option("--taps", o->taps, "feedback taps, hex")->capture_default_str();
        sub->add_option("--seed", o->seed, "register seed, hex, nonzero")->capture_default_str();
        sub->add_option("--len", o->len, "keystream bits")->capture_default_str();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const keysec::LfsrSpec spec(o->width, keysec::from_hex(o->taps));
            const keysec::Keystream ks =
                keysec::generate_keystream(spec, keysec::from_hex(o->seed), o->len);
            json result = keysec::keystream_to_json(ks);
            result["period"] = keysec::lfsr_period(spec);
            result["primitive"] = keysec::is_primitive(spec);
            emit_report("lfsr generate",
                        json{{"width", o->width}, {"taps", o->taps}, {"seed", o->seed},
                             {"len", o->len}},
                        std::move(result), "computed", o->out);
        });
    }

    {
        auto* sub = cmd->add_subcommand(
            "entropy", "keystream window distribution and the entropy ceiling");
        struct Opts {
            int width = 4;
            std::string taps = "0x9";
            int len = 8;
            int offset = 0;
            bool include_zero = false;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--width", o->width, "register width")->capture_default_str();
        sub->add_option("--taps", o->taps, "feedback taps, hex")->capture_default_str();
        sub->add_option("--len", o->len, "window length")->capture_default_str();
        sub->add_option("--offset", o->offset, "window start position")->capture_default_str();
        sub->add_flag("--include-zero", o->include_zero,
                      "average over all seeds including the stuck zero seed");
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const keysec::LfsrSpec spec(o->width, keysec::from_hex(o->taps));
            const keysec::SeedPrior prior = o->include_zero ? keysec::SeedPrior::IncludeZero
                                                            : keysec::SeedPrior::ExcludeZero;
            const keysec::KeystreamDist dist =
                keysec::keystream_distribution(spec, o->len, prior, o->offset);
            json result{{"window", keysec::keystream_dist_to_json(dist)},
                        {"shannon", keysec::shannon_report_to_json(
                                        keysec::shannon_limit_check(spec, o->len, prior))}};
            emit_report("lfsr entropy",
                        json{{"width", o->width}, {"taps", o->taps}, {"len", o->len},
                             {"offset", o->offset}, {"include_zero", o->include_zero}},
                        std::move(result), "computed", o->out);
        });
    }

    {
        auto* sub = cmd->add_subcommand(
            "kpa", "recover the seed space from known keystream bits");
        struct Opts {
            int width = 4;
            std::string taps = "0x9";
            std::string input;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--width", o->width, "register width")->capture_default_str();
        sub->add_option("--taps", o->taps, "feedback taps, hex")->capture_default_str();
        sub->add_option("--input", o->input, "known-bits JSON file {positions, bits}")
            ->required();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const keysec::LfsrSpec spec(o->width, keysec::from_hex(o->taps));
            const keysec::KpaInstance kpa = keysec::kpa_from_json(load_json_file(o->input));
            const keysec::KpaResult res = keysec::kpa_recover_seed(spec, kpa);
            emit_report("lfsr kpa",
                        json{{"width", o->width}, {"taps", o->taps}, {"input", o->input}},
                        keysec::kpa_result_to_json(res), "computed", o->out);
        });
    }
}

// Random-ensemble fallback shared by the quantum verbs: --input wins; without
// it a seed is required so sampled runs stay reproducible.
struct EnsembleSource {
    std::string input;
    int n = 1;
    int dim = 2;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;

    void add_flags(CLI::App* sub) {
        sub->add_option("--input", input, "ensemble JSON file");
        sub->add_option("--n", n, "key bits when sampling")->capture_default_str();
        sub->add_option("--dim", dim, "adversary dimension when sampling")->capture_default_str();
        seed_opt = sub->add_option("--seed", seed, "sampling seed (required without --input)");
    }

    keysec::CqEnsemble load(const json& j) const { return keysec::ensemble_from_json(j); }

    keysec::CqEnsemble get() const {
        if (!input.empty()) return load(load_json_file(input));
        if (seed_opt->count() == 0)
            throw keysec::ValidationError("random ensembles need --seed for reproducibility");
        keysec::Rng rng(seed);
        return keysec::random_ensemble(n, dim, rng);
    }

    json config() const {
        if (!input.empty()) return json{{"input", input}};
        return json{{"n", n}, {"dim", dim}, {"seed", seed}};
    }
};

void add_quantum(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "quantum", "distance criterion, discrimination, and conditional-distribution reports");
    cmd->require_subcommand(1);

    auto add_ensemble_verb = [cmd](const std::string& name, const std::string& help, auto run) {
        auto* sub = cmd->add_subcommand(name, help);
        auto src = std::make_shared<EnsembleSource>();
        auto out = std::make_shared<OutOpts>();
        src->add_flags(sub);
        add_out_flags(sub, *out);
        sub->callback([src, out, name, run]() {
            const keysec::CqEnsemble e = src->get();
            emit_report("quantum " + name, src->config(), run(e), "computed", *out);
        });
        return sub;
    };

    add_ensemble_verb("d", "joint-state distance to the ideal uniform key",
                      [](const keysec::CqEnsemble& e) {
                          return json{{"d", keysec::d_criterion(e)},
                                      {"n", e.n()},
                                      {"dim", e.dim()}};
                      });
    add_ensemble_verb("identity", "joint distance vs the averaged per-key block form",
                      [](const keysec::CqEnsemble& e) {
                          return keysec::block_identity_to_json(keysec::d_block_identity(e));
                      });
    add_ensemble_verb("helstrom", "optimal discrimination of a two-state ensemble",
                      [](const keysec::CqEnsemble& e) {
                          if (e.key_count() != 2)
                              throw keysec::ValidationError(
                                  "helstrom needs an ensemble with exactly 2 states");
                          const keysec::Povm povm =
                              keysec::helstrom_povm(e.states()[0], e.states()[1]);
                          const double td =
                              keysec::trace_distance(e.states()[0], e.states()[1]);
                          return json{{"trace_distance", td},
                                      {"success", keysec::guess_prob(
                                                      keysec::measurement_cpd(e, povm))},
                                      {"closed_form", 0.5 + 0.5 * td},
                                      {"povm", keysec::povm_to_json(povm)}};
                      });
    add_ensemble_verb("witness",
                      "outcome whose conditional key distribution is visibly non-uniform",
                      [](const keysec::CqEnsemble& e) {
                          return keysec::witness_to_json(keysec::statement_A_witness(e));
                      });

    {
        auto* sub = cmd->add_subcommand(
            "eq22", "per-outcome deviation bounds for a measured ensemble");
        struct Opts {
            std::string input;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--input", o->input, "JSON file {ensemble, povm}")->required();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const json j = load_json_file(o->input);
            if (!j.contains("ensemble") || !j.contains("povm"))
                throw keysec::ValidationError("eq22 input needs ensemble and povm objects");
            const keysec::CqEnsemble e = keysec::ensemble_from_json(j["ensemble"]);
            const keysec::Povm m = keysec::povm_from_json(j["povm"]);
            emit_report("quantum eq22", json{{"input", o->input}},
                        keysec::cpd_bounds_to_json(keysec::cpd_deviation_bounds(e, m)),
                        "computed", o->out);
        });
    }

    {
        auto* sub = cmd->add_subcommand(
            "eq18", "mixture-completion feasibility at a target epsilon");
        auto src = std::make_shared<EnsembleSource>();
        struct Opts {
            std::string eps = "0.5";
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        src->add_flags(sub);
        sub->add_option("--eps", o->eps, "mixture weight; accepts 2^-k")->capture_default_str();
        add_out_flags(sub, o->out);
        sub->callback([src, o]() {
            const keysec::CqEnsemble e = src->get();
            const double eps = parse_eps(o->eps);
            json config = src->config();
            config["eps"] = eps;
            emit_report("quantum eq18", std::move(config),
                        keysec::mixture_to_json(keysec::mixture_feasibility(e, eps)),
                        "computed", o->out);
        });
    }
}

void add_couplings(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "couplings", "joint distributions over two marginals and the mixture decomposition");
    cmd->require_subcommand(1);

    auto load_pair = [](const std::string& path) {
        const json j = load_json_file(path);
        if (!j.contains("p") || !j.contains("q"))
            throw keysec::ValidationError("couplings input needs p and q distributions");
        return std::pair{keysec::probvec_from_json(j["p"]),
                         keysec::probvec_from_json(j["q"])};
    };

    auto add_verb = [cmd, load_pair](const std::string& name, const std::string& help,
                                     auto run) {
        auto* sub = cmd->add_subcommand(name, help);
        struct Opts {
            std::string input;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--input", o->input, "JSON file {p, q}")->required();
        add_out_flags(sub, o->out);
        sub->callback([o, name, run, load_pair]() {
            const auto [p, q] = load_pair(o->input);
            emit_report("couplings " + name, json{{"input", o->input}}, run(p, q), "computed",
                        o->out);
        });
    };

    add_verb("maximal", "coupling attaining Pr[X != X'] = delta(P, Q)",
             [](const keysec::ProbVec& p, const keysec::ProbVec& q) {
                 json r = keysec::coupling_to_json(keysec::maximal_coupling(p, q));
                 r["delta"] = keysec::stat_distance(p, q);
                 return r;
             });
    add_verb("independent", "product coupling baseline",
             [](const keysec::ProbVec& p, const keysec::ProbVec& q) {
                 json r = keysec::coupling_to_json(keysec::independent_coupling(p, q));
                 r["delta"] = keysec::stat_distance(p, q);
                 return r;
             });
    add_verb("eq12", "mixture decomposition P = (1 - delta) Q + delta P'",
             [](const keysec::ProbVec& p, const keysec::ProbVec& q) {
                 const keysec::DecompositionReport rep = keysec::decomposition_test(p, q);
                 return keysec::decomposition_to_json(
                     rep, keysec::maximal_coupling(p, q).pr_not_equal(),
                     keysec::independent_coupling(p, q).pr_not_equal());
             });
}

void add_guarantee(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "guarantee", "what a security criterion buys before and during key use");
    cmd->require_subcommand(1);

    {
        auto* sub = cmd->add_subcommand(
            "markov", "averaged bound to per-instance bound with confidence");
        struct Opts {
            std::string eps;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--eps", o->eps, "averaged bound; accepts 2^-k")->required();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const double eps = parse_eps(o->eps);
            emit_report("guarantee markov", json{{"eps", eps}},
                        keysec::markov_to_json(keysec::markov_individualize(eps)), "computed",
                        o->out);
        });
    }

    {
        auto* sub = cmd->add_subcommand(
            "subset", "guessing bound eps + 2^-m for an m-bit subset");
        struct Opts {
            std::string eps;
            int m = 1;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        sub->add_option("--eps", o->eps, "distance bound; accepts 2^-k")->required();
        sub->add_option("--m", o->m, "subset size in bits")->required();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const double eps = parse_eps(o->eps);
            emit_report("guarantee subset", json{{"eps", eps}, {"m", o->m}},
                        keysec::subset_bound_to_json(keysec::delta_subset_bound(eps, o->m)),
                        "computed", o->out);
        });
    }

    auto add_spec_flags = [](CLI::App* sub, auto& o) {
        sub->add_option("--criterion", o->criterion, "p1, ie_per_bit, or delta_e")
            ->check(CLI::IsMember({"p1", "ie", "ie_per_bit", "delta", "delta_e"}))
            ->capture_default_str();
        sub->add_option("--eps", o->eps, "criterion bound; accepts 2^-k")
            ->capture_default_str();
        sub->add_option("--n", o->n, "key bits")->capture_default_str();
        sub->add_flag("--quantum-memory", o->quantum_memory,
                      "adversary keeps quantum memory into the usage phase");
    };

    {
        auto* sub = cmd->add_subcommand(
            "table1", "raw and composition guarantees for a criterion");
        struct Opts {
            std::string criterion = "delta_e";
            std::string eps = "2^-10";
            int n = 100;
            bool quantum_memory = false;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        add_spec_flags(sub, o);
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const keysec::CriterionSpec spec =
                keysec::make_criterion(keysec::criterion_from_string(o->criterion),
                                       parse_eps(o->eps), o->n, o->quantum_memory);
            emit_report("guarantee table1",
                        json{{"criterion", keysec::to_string(spec.kind)},
                             {"eps", spec.epsilon}, {"n", spec.n},
                             {"quantum_memory", spec.quantum_memory}},
                        keysec::table1_to_json(keysec::table1_report(spec)), "per-row", o->out);
        });
    }

    {
        auto* sub = cmd->add_subcommand(
            "benchmark", "criterion-implied figures versus a width-bit-seed stream cipher");
        struct Opts {
            std::string criterion = "delta_e";
            std::string eps = "2^-10";
            int n = 100;
            bool quantum_memory = false;
            int width = 8;
            OutOpts out;
        };
        auto o = std::make_shared<Opts>();
        add_spec_flags(sub, o);
        sub->add_option("--width", o->width, "stream-cipher seed width")->capture_default_str();
        add_out_flags(sub, o->out);
        sub->callback([o]() {
            const keysec::CriterionSpec spec =
                keysec::make_criterion(keysec::criterion_from_string(o->criterion),
                                       parse_eps(o->eps), o->n, o->quantum_memory);
            emit_report("guarantee benchmark",
                        json{{"criterion", keysec::to_string(spec.kind)},
                             {"eps", spec.epsilon}, {"n", spec.n},
                             {"quantum_memory", spec.quantum_memory}, {"width", o->width}},
                        keysec::benchmark_to_json(
                            keysec::benchmark_vs_conventional(spec, o->width)),
                        "per-row", o->out);
        });
    }
}

// One sweep cell: worst cases at (n, l) with eps = 2^-l for both budget kinds.
std::vector<json> sweep_cell(int n, int l) {
    const double eps = std::ldexp(1.0, -l);
    std::vector<json> rows;
    auto push = [&](const char* criterion, const char* metric, double value) {
        rows.push_back(json{{"criterion", criterion},
                            {"epsilon", eps},
                            {"n", n},
                            {"metric", metric},
                            {"value", value},
                            {"provenance", "computed"}});
    };
    const keysec::ProbVec info_case = keysec::theorem1_dist(n, l).dist();
    push("ie_per_bit", "p1_worst", keysec::guess_prob(info_case));
    push("ie_per_bit", "ie_per_bit", 1.0 - keysec::shannon_entropy(info_case) / n);
    const keysec::ProbVec dist_case = keysec::theorem2_dist(n, l).dist();
    push("delta_e", "p1_worst", keysec::guess_prob(dist_case));
    push("delta_e", "delta_e", keysec::stat_distance_to_uniform(dist_case));
    return rows;
}

void add_sweep(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "sweep", "worst-case attainability grid over n and l (epsilon = 2^-l), as CSV");
    struct Opts {
        std::string n_list = "4,8,12";
        std::string l_list = "1,2,3";
        std::string output;
        std::string format = "csv";
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--n-list", o->n_list, "comma-separated key sizes")->capture_default_str();
    sub->add_option("--l-list", o->l_list, "comma-separated budget exponents")
        ->capture_default_str();
    sub->add_option("--output", o->output, "write the CSV to this file instead of stdout");
    sub->add_option("--format", o->format, "output format")
        ->check(CLI::IsMember({"csv"}))
        ->capture_default_str();
    sub->callback([o]() {
        const std::vector<int> ns = parse_int_list(o->n_list, "n");
        const std::vector<int> ls = parse_int_list(o->l_list, "l");
        std::vector<std::future<std::vector<json>>> cells;
        for (int n : ns)
            for (int l : ls)
                cells.push_back(std::async(std::launch::async, sweep_cell, n, l));
        std::ostringstream csv;
        csv << "criterion,epsilon,n,metric,value,provenance\n";
        for (auto& cell : cells)
            for (const json& row : cell.get())
                csv << row["criterion"].get<std::string>() << ','
                    << keysec::fmt_double(row["epsilon"].get<double>()) << ','
                    << row["n"].get<int>() << ',' << row["metric"].get<std::string>() << ','
                    << keysec::fmt_double(row["value"].get<double>()) << ','
                    << row["provenance"].get<std::string>() << '\n';
        std::string text = csv.str();
        text.pop_back();
        emit_text(text, o->output);
    });
}

int g_exit = 0;

void add_repro(CLI::App& app, const std::string& self_path) {
    auto* sub = app.add_subcommand(
        "repro", "run the full acceptance suite and write a summary");
    struct Opts {
        std::string output;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--output", o->output, "also write a JSON summary to this file");
    sub->callback([o, self_path]() {
        keysec::acceptance::Options opts;
        opts.cli_path = self_path;
        const auto results = keysec::acceptance::run_acceptance(opts);
        json rows = json::array();
        int failed = 0;
        for (const auto& r : results) {
            std::printf("%s\n", keysec::acceptance::format_result(r).c_str());
            rows.push_back(json{{"id", r.id},
                                {"name", r.name},
                                {"passed", r.passed},
                                {"seconds", r.seconds},
                                {"detail", r.detail}});
            if (!r.passed) ++failed;
        }
        std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
                    results.size());
        if (!o->output.empty()) {
            const json summary{{"tool", keysec::kToolName},
                               {"version", keysec::kToolVersion},
                               {"command", "repro"},
                               {"passed", failed == 0},
                               {"criteria", std::move(rows)}};
            emit_text(summary.dump(2), o->output);
        }
        if (failed != 0) g_exit = 1;
    });
}

json error_json(const std::string& type, const std::string& message) {
    return json{{"error", json{{"type", type}, {"message", message}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantitative security reports for generated keys"};
    app.require_subcommand(1);

    add_metrics(app);
    add_construct(app);
    add_lfsr(app);
    add_quantum(app);
    add_couplings(app);
    add_guarantee(app);
    add_sweep(app);
    add_repro(app, argv[0] ? argv[0] : "keysec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fputs(error_json("usage", e.what()).dump(2).c_str(), stdout);
        std::fputc('\n', stdout);
        return 1;
    } catch (const keysec::SizeGuardError& e) {
        std::fputs(error_json("size-guard", e.what()).dump(2).c_str(), stdout);
        std::fputc('\n', stdout);
        return 2;
    } catch (const keysec::ValidationError& e) {
        std::fputs(error_json("validation", e.what()).dump(2).c_str(), stdout);
        std::fputc('\n', stdout);
        return 1;
    } catch (const std::exception& e) {
        std::fputs(error_json("internal", e.what()).dump(2).c_str(), stdout);
        std::fputc('\n', stdout);
        return 1;
    }
    return g_exit;
}
