// Batch CLI wiring the load-curve clustering pipeline end to end. Each
// subcommand reads the artifacts of its upstream stage, writes its own
// artifact plus a manifest, and fails with an actionable message when an
// upstream artifact is missing or stale.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lcc/baseline.hpp"
#include "lcc/centers.hpp"
#include "lcc/community.hpp"
#include "lcc/directory.hpp"
#include "lcc/dtw.hpp"
#include "lcc/errors.hpp"
#include "lcc/ingest.hpp"
#include "lcc/netbuild.hpp"
#include "lcc/synth.hpp"
#include "lcc/util.hpp"
#include "lcc/validity.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lcc;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string out = "out";
    std::string input;
    int window = 4;
    double lambda = 0.5;
    std::string edge_rule = "union";        // union | intersection
    std::string threshold_mode = "pervertex"; // pervertex | globalmean
    std::string cost_mode = "abs";          // abs | squared
    double gamma = 1.0;
    double gamma_start = 1.00;
    double gamma_end = 0.70;
    double gamma_step = 0.01;
    std::string intervals = "1:10,10:100,100:inf";
    std::string sf_mode = "corrected";      // corrected | literal
    std::string sdbw_mode = "corrected";    // corrected | literal
    std::string gamma_mode = "gain";        // gain | nullmodel
    std::uint64_t seed = 42;
    int threads = 1;
    int k = 0;                              // 0 = match the cluster stage
    std::string method = "both";            // validate: cicd | kmedoids | both
    std::string center_mode = "per-method"; // per-method | force-dba
    int curves_per_template = 100;
    double noise_sigma = 0.1;
    int days_per_household = 10;

    CostMode cost() const {
        if (cost_mode == "abs") return CostMode::AbsDiff;
        if (cost_mode == "squared") return CostMode::Squared;
        throw Error("config: cost_mode must be abs or squared");
    }
    EdgeRule rule() const {
        if (edge_rule == "union") return EdgeRule::Union;
        if (edge_rule == "intersection") return EdgeRule::Intersection;
        throw Error("config: edge_rule must be union or intersection");
    }
    ThresholdMode thresholds() const {
        if (threshold_mode == "pervertex") return ThresholdMode::PerVertex;
        if (threshold_mode == "globalmean") return ThresholdMode::GlobalMean;
        throw Error("config: threshold_mode must be pervertex or globalmean");
    }
    GammaMode gmode() const {
        if (gamma_mode == "gain") return GammaMode::GainTerm;
        if (gamma_mode == "nullmodel") return GammaMode::NullModel;
        throw Error("config: gamma_mode must be gain or nullmodel");
    }
    ValidityOptions validity() const {
        ValidityOptions v;
        v.window = window;
        v.cost_mode = cost();
        if (sf_mode == "literal") v.sf_mode = SfMode::AsPublished;
        else if (sf_mode != "corrected") throw Error("config: sf_mode must be corrected or literal");
        if (sdbw_mode == "literal") v.density_mode = DensityMode::AsPublished;
        else if (sdbw_mode != "corrected") throw Error("config: sdbw_mode must be corrected or literal");
        return v;
    }
    DbaOptions dba() const {
        DbaOptions d;
        d.window = window;
        d.cost_mode = cost();
        return d;
    }

    // Canonical serialization hashed into every manifest.
    std::string canonical() const {
        std::ostringstream os;
        os << "window=" << window << ";lambda=" << format_g12(lambda)
           << ";edge_rule=" << edge_rule << ";threshold_mode=" << threshold_mode
           << ";cost_mode=" << cost_mode << ";gamma=" << format_g12(gamma)
           << ";gamma_start=" << format_g12(gamma_start)
           << ";gamma_end=" << format_g12(gamma_end)
           << ";gamma_step=" << format_g12(gamma_step)
           << ";intervals=" << intervals << ";sf_mode=" << sf_mode
           << ";sdbw_mode=" << sdbw_mode << ";gamma_mode=" << gamma_mode
           << ";seed=" << seed << ";k=" << k
           << ";curves_per_template=" << curves_per_template
           << ";noise_sigma=" << format_g12(noise_sigma)
           << ";days_per_household=" << days_per_household;
        return os.str();
    }
};

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

void apply_config_file(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    auto get = [&](const char* key, auto& field) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        std::istringstream is(it->second);
        is >> field;
        if (is.fail()) throw Error(std::string("config: bad value for ") + key);
    };
    get("out", cfg.out);
    get("input", cfg.input);
    get("window", cfg.window);
    get("lambda", cfg.lambda);
    get("edge_rule", cfg.edge_rule);
    get("threshold_mode", cfg.threshold_mode);
    get("cost_mode", cfg.cost_mode);
    get("gamma", cfg.gamma);
    get("gamma_start", cfg.gamma_start);
    get("gamma_end", cfg.gamma_end);
    get("gamma_step", cfg.gamma_step);
    get("intervals", cfg.intervals);
    get("sf_mode", cfg.sf_mode);
    get("sdbw_mode", cfg.sdbw_mode);
    get("gamma_mode", cfg.gamma_mode);
    get("seed", cfg.seed);
    get("threads", cfg.threads);
    get("k", cfg.k);
    get("method", cfg.method);
    get("center_mode", cfg.center_mode);
    get("curves_per_template", cfg.curves_per_template);
    get("noise_sigma", cfg.noise_sigma);
    get("days_per_household", cfg.days_per_household);
}

std::vector<KInterval> parse_intervals(const std::string& spec) {
    std::vector<KInterval> out;
    std::istringstream is(spec);
    std::string part;
    while (std::getline(is, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw Error("intervals: expected lo:hi pairs, got '" + part + "'");
        KInterval iv;
        iv.lo = std::stoi(part.substr(0, colon));
        std::string hi = part.substr(colon + 1);
        iv.hi = (hi == "inf") ? -1 : std::stoi(hi);
        out.push_back(iv);
    }
    if (out.empty()) throw Error("intervals: empty specification");
    return out;
}

// ---- manifests ---------------------------------------------------------

fs::path manifest_path(const RunConfig& cfg, const std::string& stage) {
    return fs::path(cfg.out) / ("manifest_" + stage + ".json");
}

void write_manifest(const RunConfig& cfg, const std::string& stage,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
    json m;
    m["stage"] = stage;
    m["version"] = kVersion;
    m["config_hash"] = hash_string(cfg.canonical());
    for (const auto& f : inputs)
        m["inputs"][fs::path(f).filename().string()] = hash_file(f);
    for (const auto& f : outputs)
        m["outputs"][fs::path(f).filename().string()] = hash_file(f);
    write_text_file(manifest_path(cfg, stage).string(), m.dump(2) + "\n");
}

// Verifies that `file`, produced by `producer`, exists and still matches
// the hash its manifest recorded.
void require_artifact(const RunConfig& cfg, const std::string& file,
                      const std::string& producer) {
    fs::path p = fs::path(cfg.out) / file;
    if (!fs::exists(p))
        throw MissingArtifact(file + " not found in " + cfg.out +
                              "; run `lcc " + producer + "` first");
    fs::path mp = manifest_path(cfg, producer);
    if (!fs::exists(mp))
        throw MissingArtifact("manifest for stage '" + producer +
                              "' missing; rerun `lcc " + producer + "`");
    json m = json::parse(read_text_file(mp.string()));
    if (!m["outputs"].contains(file))
        throw StaleArtifact(file + " is not recorded by the " + producer +
                            " manifest; rerun `lcc " + producer + "`");
    if (m["outputs"][file] != hash_file(p.string()))
        throw StaleArtifact(file + " does not match the " + producer +
                            " manifest (stale artifact); rerun `lcc " +
                            producer + "`");
}

// A stage may be skipped when its manifest still matches config, inputs
// and outputs.
bool stage_up_to_date(const RunConfig& cfg, const std::string& stage,
                      const std::vector<std::string>& inputs) {
    fs::path mp = manifest_path(cfg, stage);
    if (!fs::exists(mp)) return false;
    json m;
    try {
        m = json::parse(read_text_file(mp.string()));
    } catch (...) {
        return false;
    }
    if (m.value("config_hash", "") != hash_string(cfg.canonical())) return false;
    for (const auto& f : inputs) {
        std::string name = fs::path(f).filename().string();
        if (!m["inputs"].contains(name) || !fs::exists(f) ||
            m["inputs"][name] != hash_file(f))
            return false;
    }
    for (auto& [name, h] : m["outputs"].items()) {
        fs::path p = fs::path(cfg.out) / name;
        if (!fs::exists(p) || h != hash_file(p.string())) return false;
    }
    return true;
}

// ---- artifact I/O ------------------------------------------------------

struct CurveSet {
    std::vector<NormalizedCurve> curves;
    std::vector<std::string> households;
    std::vector<std::string> dates;
};

void write_curves_csv(const fs::path& path, const CurveSet& set) {
    std::ostringstream os;
    os << "curve_id,household_id,date";
    for (int t = 0; t < kSlotsPerDay; ++t) os << ",v" << t;
    os << "\n";
    for (std::size_t i = 0; i < set.curves.size(); ++i) {
        os << set.curves[i].curve_id << ',' << set.households[i] << ','
           << set.dates[i];
        for (double v : set.curves[i].values) os << ',' << format_g12(v);
        os << "\n";
    }
    write_text_file(path.string(), os.str());
}

CurveSet read_curves_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    CurveSet set;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string field;
        NormalizedCurve c;
        std::getline(is, field, ',');
        c.curve_id = std::stoi(field);
        std::string hh, date;
        std::getline(is, hh, ',');
        std::getline(is, date, ',');
        while (std::getline(is, field, ',')) c.values.push_back(std::stod(field));
        if (static_cast<int>(c.values.size()) != kSlotsPerDay)
            throw FormatError(path.string() + ": curve " +
                              std::to_string(c.curve_id) + " has " +
                              std::to_string(c.values.size()) + " samples");
        set.curves.push_back(std::move(c));
        set.households.push_back(hh);
        set.dates.push_back(date);
    }
    return set;
}

void write_partition_csv(const fs::path& path, const Partition& p,
                         const std::vector<int>& curve_ids) {
    std::ostringstream os;
    os << "curve_id,cluster_label\n";
    for (std::size_t i = 0; i < p.labels.size(); ++i)
        os << curve_ids[i] << ',' << p.labels[i] << "\n";
    write_text_file(path.string(), os.str());
}

Partition read_partition_csv(const fs::path& path, std::size_t expected_n) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    Partition p;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        p.labels.push_back(std::stoi(line.substr(comma + 1)));
    }
    if (p.labels.size() != expected_n)
        throw FormatError(path.string() + ": partition covers " +
                          std::to_string(p.labels.size()) + " curves, expected " +
                          std::to_string(expected_n));
    return p;
}

void write_tlps_csv(const fs::path& path,
                    const std::vector<TypicalLoadProfile>& tlps) {
    std::ostringstream os;
    os << "cluster_label";
    for (int t = 0; t < kSlotsPerDay; ++t) os << ",t" << t;
    os << "\n";
    for (const auto& tlp : tlps) {
        os << tlp.cluster_label;
        for (double v : tlp.values) os << ',' << format_g12(v);
        os << "\n";
    }
    write_text_file(path.string(), os.str());
}

DistanceMatrix load_distances(const RunConfig& cfg) {
    require_artifact(cfg, "distances.bin", "distances");
    json ids = json::parse(
        read_text_file((fs::path(cfg.out) / "distances_ids.json").string()));
    std::vector<int> curve_ids = ids["curve_ids"].get<std::vector<int>>();
    return DistanceMatrix::load((fs::path(cfg.out) / "distances.bin").string(),
                                std::move(curve_ids));
}

WeightedGraph load_graph(const RunConfig& cfg) {
    require_artifact(cfg, "graph.csv", "graph");
    json meta = json::parse(
        read_text_file((fs::path(cfg.out) / "graph_meta.json").string()));
    WeightedGraph g;
    g.n = meta["n"].get<int>();
    g.d_max = meta["d_max"].get<double>();
    g.curve_ids = meta["curve_ids"].get<std::vector<int>>();
    std::map<int, int> id_to_index;
    for (int i = 0; i < g.n; ++i) id_to_index[g.curve_ids[i]] = i;

    std::ifstream in(fs::path(cfg.out) / "graph.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string a, b, w;
        std::getline(is, a, ',');
        std::getline(is, b, ',');
        std::getline(is, w, ',');
        g.edges.push_back({id_to_index.at(std::stoi(a)), id_to_index.at(std::stoi(b)),
                           std::stod(w)});
    }
    return g;
}

// ---- subcommands -------------------------------------------------------

void cmd_synth(const RunConfig& cfg) {
    fs::create_directories(cfg.out);
    SynthSpec spec;
    spec.curves_per_template = cfg.curves_per_template;
    spec.noise_sigma = cfg.noise_sigma;
    spec.days_per_household = cfg.days_per_household;
    spec.seed = cfg.seed;
    auto corpus = generate(spec);

    std::ostringstream readings;
    readings << "household_id,timestamp,kwh\n";
    for (const auto& c : corpus.curves)
        for (int t = 0; t < kSlotsPerDay; ++t) {
            char ts[16];
            std::snprintf(ts, sizeof ts, "T%02d:%02d:00", t / 4, (t % 4) * 15);
            readings << c.household_id << ',' << c.date << ts << ','
                     << format_g12(c.samples[t]) << "\n";
        }
    fs::path rpath = fs::path(cfg.out) / "readings.csv";
    write_text_file(rpath.string(), readings.str());

    std::ostringstream labels;
    labels << "curve_id,template\n";
    for (std::size_t i = 0; i < corpus.curves.size(); ++i)
        labels << corpus.curves[i].curve_id << ','
               << spec.templates[corpus.labels[i]] << "\n";
    fs::path lpath = fs::path(cfg.out) / "labels.csv";
    write_text_file(lpath.string(), labels.str());

    write_manifest(cfg, "synth", {}, {rpath.string(), lpath.string()});
    std::cout << "synth: " << corpus.curves.size() << " curves -> " << rpath
              << "\n";
}

void cmd_ingest(const RunConfig& cfg) {
    fs::create_directories(cfg.out);
    std::string input = cfg.input.empty()
                            ? (fs::path(cfg.out) / "readings.csv").string()
                            : cfg.input;
    if (!fs::exists(input))
        throw MissingArtifact(input +
                              " not found; pass --input or run `lcc synth`");

    std::ifstream in(input);
    std::vector<std::string> diags;
    auto readings = parse_readings(in, &diags);
    for (const auto& d : diags) std::cerr << "warning: " << d << "\n";

    SkipReport report;
    auto days = assemble_days(readings, &report);

    CurveSet set;
    std::vector<LoadCurve> kept;
    for (const auto& day : days) kept.push_back(day);
    set.curves = normalize_all(kept, &report);
    // household/date arrays must line up with the surviving curves
    std::map<int, std::pair<std::string, std::string>> meta;
    for (const auto& day : days) meta[day.curve_id] = {day.household_id, day.date};
    for (const auto& c : set.curves) {
        set.households.push_back(meta[c.curve_id].first);
        set.dates.push_back(meta[c.curve_id].second);
    }

    fs::path cpath = fs::path(cfg.out) / "curves.csv";
    write_curves_csv(cpath, set);
    fs::path spath = fs::path(cfg.out) / "skip_report.json";
    write_text_file(spath.string(), report.to_json() + "\n");
    write_manifest(cfg, "ingest", {input}, {cpath.string(), spath.string()});
    std::cout << "ingest: " << set.curves.size() << " curves, skip report "
              << report.to_json() << "\n";
}

void cmd_distances(const RunConfig& cfg) {
    require_artifact(cfg, "curves.csv", "ingest");
    fs::path cpath = fs::path(cfg.out) / "curves.csv";
    if (stage_up_to_date(cfg, "distances", {cpath.string()})) {
        std::cout << "distances: up to date, reusing " << cfg.out
                  << "/distances.bin\n";
        return;
    }
    auto set = read_curves_csv(cpath);
    auto dm = pairwise_distances(set.curves, cfg.window, cfg.cost(), cfg.threads);

    fs::path dpath = fs::path(cfg.out) / "distances.bin";
    dm.save(dpath.string());
    json ids;
    ids["curve_ids"] = dm.curve_ids();
    fs::path ipath = fs::path(cfg.out) / "distances_ids.json";
    write_text_file(ipath.string(), ids.dump(2) + "\n");
    write_manifest(cfg, "distances", {cpath.string()},
                   {dpath.string(), ipath.string()});
    std::cout << "distances: " << dm.size() << "x" << dm.size() << " matrix, w="
              << cfg.window << "\n";
}

void cmd_graph(const RunConfig& cfg) {
    auto dm = load_distances(cfg);
    auto g = build_graph(dm, cfg.lambda, cfg.rule(), cfg.thresholds());

    std::ostringstream os;
    os << "src_id,dst_id,weight\n";
    for (const auto& e : g.edges)
        os << g.curve_ids[e.u] << ',' << g.curve_ids[e.v] << ','
           << format_g12(e.weight) << "\n";
    fs::path gpath = fs::path(cfg.out) / "graph.csv";
    write_text_file(gpath.string(), os.str());

    json meta;
    meta["lambda"] = cfg.lambda;
    meta["rule"] = cfg.edge_rule;
    meta["threshold_mode"] = cfg.threshold_mode;
    meta["d_max"] = g.d_max;
    meta["n"] = g.n;
    meta["edges"] = g.edges.size();
    meta["curve_ids"] = g.curve_ids;
    fs::path mpath = fs::path(cfg.out) / "graph_meta.json";
    write_text_file(mpath.string(), meta.dump(2) + "\n");
    write_manifest(cfg, "graph",
                   {(fs::path(cfg.out) / "distances.bin").string()},
                   {gpath.string(), mpath.string()});
    std::cout << "graph: " << g.n << " vertices, " << g.edges.size()
              << " edges, d_max=" << format_g12(g.d_max) << "\n";
}

void cmd_cluster(const RunConfig& cfg) {
    auto g = load_graph(cfg);
    auto res = louvain(g, cfg.gamma, cfg.gmode());

    fs::path ppath = fs::path(cfg.out) / "partition.csv";
    write_partition_csv(ppath, res.partition, g.curve_ids);
    json meta;
    meta["gamma"] = cfg.gamma;
    meta["gamma_mode"] = cfg.gamma_mode;
    meta["passes"] = res.passes;
    meta["final_q"] = res.final_q;
    meta["k"] = res.partition.num_clusters();
    meta["q_history"] = res.q_history;
    fs::path mpath = fs::path(cfg.out) / "cluster_meta.json";
    write_text_file(mpath.string(), meta.dump(2) + "\n");
    write_manifest(cfg, "cluster", {(fs::path(cfg.out) / "graph.csv").string()},
                   {ppath.string(), mpath.string()});
    std::cout << "cluster: gamma=" << format_g12(cfg.gamma) << " k="
              << res.partition.num_clusters() << " Q=" << format_g12(res.final_q)
              << "\n";
}

void cmd_tlp(const RunConfig& cfg) {
    require_artifact(cfg, "curves.csv", "ingest");
    require_artifact(cfg, "partition.csv", "cluster");
    auto set = read_curves_csv(fs::path(cfg.out) / "curves.csv");
    auto dm = load_distances(cfg);
    auto p = read_partition_csv(fs::path(cfg.out) / "partition.csv",
                                set.curves.size());
    auto tlps = extract_tlps(p, set.curves, dm, cfg.dba());

    fs::path tpath = fs::path(cfg.out) / "tlps.csv";
    write_tlps_csv(tpath, tlps);
    write_manifest(cfg, "tlp",
                   {(fs::path(cfg.out) / "partition.csv").string(),
                    (fs::path(cfg.out) / "curves.csv").string()},
                   {tpath.string()});
    std::cout << "tlp: " << tlps.size() << " profiles\n";
}

void cmd_baseline(const RunConfig& cfg) {
    auto dm = load_distances(cfg);
    int k = cfg.k;
    if (k == 0) {
        require_artifact(cfg, "partition.csv", "cluster");
        auto set = read_curves_csv(fs::path(cfg.out) / "curves.csv");
        auto ref = read_partition_csv(fs::path(cfg.out) / "partition.csv",
                                      set.curves.size());
        k = ref.num_clusters();
        if (k < 2)
            throw InvalidK("baseline: matched cluster count is " +
                           std::to_string(k) + "; nothing to compare");
    }
    KMedoidsOptions opts;
    opts.seed = cfg.seed;
    auto res = k_medoids(dm, k, opts);

    fs::path bpath = fs::path(cfg.out) / "baseline_partition.csv";
    write_partition_csv(bpath, res.partition, dm.curve_ids());
    json meta;
    meta["k"] = k;
    meta["iterations"] = res.iterations;
    meta["total_cost"] = res.total_cost;
    std::vector<int> medoid_ids;
    for (int m : res.medoids) medoid_ids.push_back(dm.curve_ids()[m]);
    meta["medoid_ids"] = medoid_ids;
    fs::path mpath = fs::path(cfg.out) / "baseline_meta.json";
    write_text_file(mpath.string(), meta.dump(2) + "\n");
    write_manifest(cfg, "baseline",
                   {(fs::path(cfg.out) / "distances.bin").string()},
                   {bpath.string(), mpath.string()});
    std::cout << "baseline: k=" << k << " cost=" << format_g12(res.total_cost)
              << "\n";
}

void cmd_validate(const RunConfig& cfg) {
    require_artifact(cfg, "curves.csv", "ingest");
    auto set = read_curves_csv(fs::path(cfg.out) / "curves.csv");
    auto dm = load_distances(cfg);
    auto vopts = cfg.validity();

    std::vector<ValidityReport> reports;
    auto evaluate = [&](const Partition& p, bool dba_centers,
                        const std::vector<int>& medoids) {
        std::vector<std::vector<double>> centers;
        std::string mode;
        if (dba_centers) {
            auto tlps = extract_tlps(p, set.curves, dm, cfg.dba());
            for (auto& t : tlps) centers.push_back(t.values);
            mode = "averaged";
        } else {
            for (int m : medoids) centers.push_back(set.curves[m].values);
            mode = "medoid";
        }
        reports.push_back(compute_report(p, centers, set.curves, dm,
                                         set.households, mode, vopts));
    };

    if (cfg.method == "cicd" || cfg.method == "both") {
        require_artifact(cfg, "partition.csv", "cluster");
        auto p = read_partition_csv(fs::path(cfg.out) / "partition.csv",
                                    set.curves.size());
        evaluate(p, true, {});
    }
    if (cfg.method == "kmedoids" || cfg.method == "both") {
        require_artifact(cfg, "baseline_partition.csv", "baseline");
        auto p = read_partition_csv(fs::path(cfg.out) / "baseline_partition.csv",
                                    set.curves.size());
        p.compact();
        json meta = json::parse(read_text_file(
            (fs::path(cfg.out) / "baseline_meta.json").string()));
        std::vector<int> medoid_ids = meta["medoid_ids"].get<std::vector<int>>();
        std::map<int, int> id_to_index;
        for (std::size_t i = 0; i < set.curves.size(); ++i)
            id_to_index[set.curves[i].curve_id] = static_cast<int>(i);
        std::vector<int> medoids;
        for (int id : medoid_ids) medoids.push_back(id_to_index.at(id));
        bool force_dba = cfg.center_mode == "force-dba";
        evaluate(p, force_dba, medoids);
    }
    if (reports.empty()) throw Error("validate: method must be cicd, kmedoids or both");

    std::ostringstream jr;
    jr << "[";
    std::ostringstream cr;
    cr << ValidityReport::csv_header() << "\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        jr << (i ? ",\n " : "") << reports[i].to_json();
        cr << reports[i].to_csv_row() << "\n";
    }
    jr << "]\n";
    fs::path jpath = fs::path(cfg.out) / "validity.json";
    fs::path cpath = fs::path(cfg.out) / "validity.csv";
    write_text_file(jpath.string(), jr.str());
    write_text_file(cpath.string(), cr.str());
    write_manifest(cfg, "validate",
                   {(fs::path(cfg.out) / "curves.csv").string()},
                   {jpath.string(), cpath.string()});
    for (const auto& r : reports)
        std::cout << "validate[" << r.center_mode << "]: " << r.to_json() << "\n";
}

SweepOptions sweep_options(const RunConfig& cfg) {
    SweepOptions s;
    s.gamma_start = cfg.gamma_start;
    s.gamma_end = cfg.gamma_end;
    s.gamma_step = cfg.gamma_step;
    s.gamma_mode = cfg.gmode();
    s.dba = cfg.dba();
    s.validity = cfg.validity();
    s.threads = cfg.threads;
    return s;
}

std::string sweep_csv(const std::vector<SweepPoint>& sweep) {
    std::ostringstream os;
    os << "gamma,k,vcn,Q,variance\n";
    for (const auto& pt : sweep)
        os << format_g12(pt.gamma) << ',' << pt.k << ','
           << (pt.vcn_defined ? format_g12(pt.vcn) : std::string("nan")) << ','
           << format_g12(pt.q) << ',' << format_g12(pt.variance) << "\n";
    return os.str();
}

void cmd_sweep(const RunConfig& cfg) {
    require_artifact(cfg, "curves.csv", "ingest");
    auto set = read_curves_csv(fs::path(cfg.out) / "curves.csv");
    auto dm = load_distances(cfg);
    auto g = load_graph(cfg);
    auto sweep = gamma_sweep(g, set.curves, dm, sweep_options(cfg));

    fs::path spath = fs::path(cfg.out) / "sweep.csv";
    write_text_file(spath.string(), sweep_csv(sweep));
    write_manifest(cfg, "sweep", {(fs::path(cfg.out) / "graph.csv").string()},
                   {spath.string()});
    std::cout << "sweep: " << sweep.size() << " points\n";
}

void cmd_directory(const RunConfig& cfg) {
    require_artifact(cfg, "curves.csv", "ingest");
    auto set = read_curves_csv(fs::path(cfg.out) / "curves.csv");
    auto dm = load_distances(cfg);
    auto g = load_graph(cfg);
    auto sweep = gamma_sweep(g, set.curves, dm, sweep_options(cfg));
    auto intervals = parse_intervals(cfg.intervals);
    auto dir = build_directory(sweep, intervals, set.curves, dm, cfg.dba());

    json manifest;
    manifest["layers"] = json::array();
    std::vector<std::string> outputs;
    for (std::size_t i = 0; i < dir.layers.size(); ++i) {
        const auto& layer = dir.layers[i];
        json jl;
        jl["interval_lo"] = layer.interval.lo;
        jl["interval_hi"] = layer.interval.hi; // -1 = unbounded
        jl["empty"] = layer.empty;
        if (!layer.empty) {
            jl["gamma"] = layer.point.gamma;
            jl["k"] = layer.point.k;
            jl["vcn"] = layer.point.vcn;
            jl["mean_variance"] = layer.mean_variance;
            fs::path tpath = fs::path(cfg.out) /
                             ("layer" + std::to_string(i) + "_tlps.csv");
            write_tlps_csv(tpath, layer.tlps);
            fs::path ppath = fs::path(cfg.out) /
                             ("layer" + std::to_string(i) + "_partition.csv");
            write_partition_csv(ppath, layer.point.partition, g.curve_ids);
            jl["tlps"] = tpath.filename().string();
            jl["partition"] = ppath.filename().string();
            outputs.push_back(tpath.string());
            outputs.push_back(ppath.string());
        } else {
            std::cerr << "note: interval [" << layer.interval.lo << ","
                      << (layer.interval.hi < 0 ? std::string("inf")
                                                : std::to_string(layer.interval.hi))
                      << ") matched no sweep point\n";
        }
        manifest["layers"].push_back(jl);
    }
    fs::path dpath = fs::path(cfg.out) / "directory.json";
    write_text_file(dpath.string(), manifest.dump(2) + "\n");
    outputs.push_back(dpath.string());

    fs::path spath = fs::path(cfg.out) / "sweep.csv";
    write_text_file(spath.string(), sweep_csv(sweep));
    outputs.push_back(spath.string());

    write_manifest(cfg, "directory",
                   {(fs::path(cfg.out) / "graph.csv").string()}, outputs);
    std::cout << "directory: " << dir.layers.size() << " layers -> " << dpath
              << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Load-curve clustering pipeline"};
    app.require_subcommand(1);

    RunConfig cfg;
    // Flags override config-file keys, which override defaults: CLI11
    // runs option callbacks in registration order, so registering
    // --config first means explicit flags are applied after it.
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", "key=value config file")
            ->each([&](const std::string& path) {
                apply_config_file(cfg, load_config_file(path));
            });
        sub->add_option("--out", cfg.out, "artifact directory");
        sub->add_option("--threads", cfg.threads, "worker thread count");
        sub->add_option("--window,-w", cfg.window, "DTW band half-width");
        sub->add_option("--cost-mode", cfg.cost_mode, "abs|squared");
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    add_common(synth);
    synth->add_option("--curves-per-template", cfg.curves_per_template);
    synth->add_option("--noise-sigma", cfg.noise_sigma);
    synth->add_option("--days-per-household", cfg.days_per_household);

    auto* ingest = app.add_subcommand("ingest", "parse readings into normalized curves");
    add_common(ingest);
    ingest->add_option("--input", cfg.input, "readings CSV");

    auto* distances = app.add_subcommand("distances", "pairwise banded-DTW matrix");
    add_common(distances);

    auto* graph = app.add_subcommand("graph", "eps-NN network construction");
    add_common(graph);
    graph->add_option("--lambda", cfg.lambda, "threshold scale");
    graph->add_option("--edge-rule", cfg.edge_rule, "union|intersection");
    graph->add_option("--threshold-mode", cfg.threshold_mode, "pervertex|globalmean");

    auto* cluster = app.add_subcommand("cluster", "community detection");
    add_common(cluster);
    cluster->add_option("--gamma", cfg.gamma, "resolution parameter");
    cluster->add_option("--gamma-mode", cfg.gamma_mode, "gain|nullmodel");

    auto* tlp = app.add_subcommand("tlp", "extract typical load profiles");
    add_common(tlp);

    auto* baseline = app.add_subcommand("baseline", "K-medoids + DTW baseline");
    add_common(baseline);
    baseline->add_option("--k", cfg.k, "cluster count (0 = match cluster stage)");

    auto* validate = app.add_subcommand("validate", "cluster validity indices");
    add_common(validate);
    validate->add_option("--method", cfg.method, "cicd|kmedoids|both");
    validate->add_option("--center-mode", cfg.center_mode, "per-method|force-dba");
    validate->add_option("--sf-mode", cfg.sf_mode, "corrected|literal");
    validate->add_option("--sdbw-mode", cfg.sdbw_mode, "corrected|literal");

    auto* sweep = app.add_subcommand("sweep", "gamma sweep, plot-ready CSV");
    add_common(sweep);
    sweep->add_option("--gamma-start", cfg.gamma_start);
    sweep->add_option("--gamma-end", cfg.gamma_end);
    sweep->add_option("--gamma-step", cfg.gamma_step);
    sweep->add_option("--gamma-mode", cfg.gamma_mode, "gain|nullmodel");

    auto* directory = app.add_subcommand("directory", "multi-layer TLP directory");
    add_common(directory);
    directory->add_option("--gamma-start", cfg.gamma_start);
    directory->add_option("--gamma-end", cfg.gamma_end);
    directory->add_option("--gamma-step", cfg.gamma_step);
    directory->add_option("--gamma-mode", cfg.gamma_mode, "gain|nullmodel");
    directory->add_option("--intervals", cfg.intervals, "lo:hi,... (hi may be inf)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) cmd_synth(cfg);
        else if (ingest->parsed()) cmd_ingest(cfg);
        else if (distances->parsed()) cmd_distances(cfg);
        else if (graph->parsed()) cmd_graph(cfg);
        else if (cluster->parsed()) cmd_cluster(cfg);
        else if (tlp->parsed()) cmd_tlp(cfg);
        else if (baseline->parsed()) cmd_baseline(cfg);
        else if (validate->parsed()) cmd_validate(cfg);
        else if (sweep->parsed()) cmd_sweep(cfg);
        else if (directory->parsed()) cmd_directory(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
