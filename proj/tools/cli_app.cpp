#include "cli_app.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "manifest.hpp"
#include "simclust/compare.hpp"
#include "simclust/corpus.hpp"
#include "simclust/error.hpp"
#include "simclust/export.hpp"
#include "simclust/langcluster.hpp"
#include "simclust/netcluster.hpp"
#include "simclust/pipeline.hpp"
#include "simclust/synth.hpp"
#include "simclust/text.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace simclust::cli {

namespace {

enum class LogLevel { quiet, warn, info, debug };

LogLevel log_level_from_env() {
    const char* raw = std::getenv("SIMCLUST_LOG");
    if (!raw) return LogLevel::warn;
    const std::string v = text::to_lower(raw);
    if (v == "quiet" || v == "off" || v == "0") return LogLevel::quiet;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
}

class Log {
public:
    Log(std::ostream& err, LogLevel level) : err_(err), level_(level) {}

    void warn(const std::string& msg) const {
        if (level_ >= LogLevel::warn) err_ << "warning: " << msg << '\n';
    }
    void info(const std::string& msg) const {
        if (level_ >= LogLevel::info) err_ << "info: " << msg << '\n';
    }

private:
    std::ostream& err_;
    LogLevel level_;
};

/// Every hyperparameter of a run. Defaults mirror the March-2021 analysis
/// where it states a value.
struct PipelineConfig {
    std::uint64_t seed = 0;

    std::size_t top_k_influencers = 100;
    double threshold_fraction = 0.0065;
    double explicit_threshold = -1.0;  // < 0: use threshold_fraction
    std::size_t min_pts_net = 2;
    double log_rank_offset = 1.0;
    bool no_normalize = false;

    double q_low = 0.97;
    double q_high = 0.9998;
    std::uint64_t per_tag_min = 3;
    std::uint64_t per_user_min = 6;
    std::vector<std::size_t> k_list = default_k_list();
    double min_pts_frac = 0.02;
    double eps_frac = 0.8;
    std::size_t min_pts_lang = 0;  // 0: use min_pts_frac
    std::size_t eps = 0;           // 0: use eps_frac
    std::size_t profile_top_n = 25;
    std::string lemmas;
    std::string stopwords;
    bool no_bundled_lexicon = false;

    bool include_noise_source = false;

    NetPipelineParams net_params() const {
        NetPipelineParams p;
        p.top_k = top_k_influencers;
        p.threshold_fraction = threshold_fraction;
        if (explicit_threshold >= 0.0) p.explicit_threshold = explicit_threshold;
        p.min_pts = min_pts_net;
        p.normalize = !no_normalize;
        p.rank_offset = log_rank_offset;
        return p;
    }

    LangPipelineParams lang_params() const {
        LangPipelineParams p;
        p.q_low = q_low;
        p.q_high = q_high;
        p.per_tag_min = per_tag_min;
        p.per_user_min = per_user_min;
        p.k_list = k_list;
        p.min_pts_frac = min_pts_frac;
        p.eps_frac = eps_frac;
        if (min_pts_lang > 0) p.min_pts = min_pts_lang;
        if (eps > 0) p.eps = eps;
        p.seed = seed;
        p.profile_top_n = profile_top_n;
        return p;
    }

    ojson net_json() const {
        ojson j;
        j["top_k_influencers"] = top_k_influencers;
        j["threshold_fraction"] = threshold_fraction;
        if (explicit_threshold >= 0.0) j["threshold"] = explicit_threshold;
        j["min_pts_net"] = min_pts_net;
        j["normalize"] = !no_normalize;
        j["log_rank_offset"] = log_rank_offset;
        return j;
    }

    ojson lang_json() const {
        ojson j;
        j["q_low"] = q_low;
        j["q_high"] = q_high;
        j["per_tag_min"] = per_tag_min;
        j["per_user_min"] = per_user_min;
        j["k_list"] = k_list;
        j["min_pts_frac"] = min_pts_frac;
        j["eps_frac"] = eps_frac;
        if (min_pts_lang > 0) j["min_pts_lang"] = min_pts_lang;
        if (eps > 0) j["eps"] = eps;
        j["profile_top_n"] = profile_top_n;
        j["lemmas"] = lemmas.empty() ? (no_bundled_lexicon ? "none" : "bundled") : fs::path(lemmas).filename().string();
        j["stopwords"] =
            stopwords.empty() ? (no_bundled_lexicon ? "none" : "bundled") : fs::path(stopwords).filename().string();
        return j;
    }
};

/// Registers a long option under both its dashed flag name and the
/// underscore key used in configuration files.
template <typename T>
CLI::Option* add_keyed(CLI::App& app, const std::string& key, T& target, const std::string& help) {
    std::string dashed = key;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    std::string names = "--" + dashed;
    if (dashed != key) names += ",--" + key;
    return app.add_option(names, target, help)->capture_default_str();
}

CLI::Option* add_keyed_flag(CLI::App& app, const std::string& key, bool& target, const std::string& help) {
    std::string dashed = key;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    std::string names = "--" + dashed;
    if (dashed != key) names += ",--" + key;
    return app.add_flag(names, target, help);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

ojson intermediates_json(const NetIntermediates& im) {
    ojson j;
    auto put = [&](const char* key, const std::optional<std::uint64_t>& v) {
        if (v) j[key] = *v;
    };
    put("all_users", im.all_users);
    put("retweeting_users", im.retweeting_users);
    put("influencer_retweeting_users", im.influencer_retweeting_users);
    put("users_above_threshold", im.users_above_threshold);
    put("all_tweets", im.all_tweets);
    put("retweets", im.retweets);
    put("influencer_retweets", im.influencer_retweets);
    put("retweets_above_threshold", im.retweets_above_threshold);
    return j;
}

ojson intermediates_json(const LangIntermediates& im) {
    ojson j;
    auto put = [&](const char* key, const std::optional<std::uint64_t>& v) {
        if (v) j[key] = *v;
    };
    put("all_hashtags", im.all_hashtags);
    put("retained_hashtags", im.retained_hashtags);
    put("all_users", im.all_users);
    put("users_above_min", im.users_above_min);
    put("users_with_vector", im.users_with_vector);
    return j;
}

nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ValidationError("not a JSON object: " + path.string());
    return j;
}

std::optional<std::uint64_t> get_count(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_unsigned()) return std::nullopt;
    return it->get<std::uint64_t>();
}

NetIntermediates read_net_intermediates(const fs::path& path) {
    const auto j = read_json_file(path);
    NetIntermediates im;
    im.all_users = get_count(j, "all_users");
    im.retweeting_users = get_count(j, "retweeting_users");
    im.influencer_retweeting_users = get_count(j, "influencer_retweeting_users");
    im.users_above_threshold = get_count(j, "users_above_threshold");
    im.all_tweets = get_count(j, "all_tweets");
    im.retweets = get_count(j, "retweets");
    im.influencer_retweets = get_count(j, "influencer_retweets");
    im.retweets_above_threshold = get_count(j, "retweets_above_threshold");
    return im;
}

LangIntermediates read_lang_intermediates(const fs::path& path) {
    const auto j = read_json_file(path);
    LangIntermediates im;
    im.all_hashtags = get_count(j, "all_hashtags");
    im.retained_hashtags = get_count(j, "retained_hashtags");
    im.all_users = get_count(j, "all_users");
    im.users_above_min = get_count(j, "users_above_min");
    im.users_with_vector = get_count(j, "users_with_vector");
    return im;
}

// ---------------------------------------------------------------------------
// Subcommands

struct GenOptions {
    SynthConfig synth;
    std::string out;
    std::string truth;
};

void cmd_gen(const PipelineConfig& cfg, GenOptions opts, std::ostream& out, const Log& log) {
    opts.synth.seed = cfg.seed;
    const auto result = generate(opts.synth);
    const fs::path corpus_path = opts.out;
    const fs::path truth_path = opts.truth.empty() ? fs::path(opts.out + ".truth.csv") : fs::path(opts.truth);
    if (corpus_path.has_parent_path()) ensure_dir(corpus_path.parent_path());
    write_corpus(result.corpus, corpus_path);
    write_truth_csv(result.truth, truth_path);

    Manifest m;
    m.subcommand = "gen";
    m.seed = cfg.seed;
    const auto& s = opts.synth;
    m.config = {{"communities", s.n_communities},
                {"influencers_per_community", s.influencers_per_community},
                {"users_per_community", s.users_per_community},
                {"noise_users", s.noise_users},
                {"p_in", s.p_in},
                {"retweets_per_user", s.retweets_per_user},
                {"power_law_b", s.power_law_b},
                {"power_law_m", s.power_law_m},
                {"hashtags_per_community", s.hashtags_per_community},
                {"shared_hashtags", s.shared_hashtags},
                {"hashtag_posts_per_user", s.hashtag_posts_per_user},
                {"shared_hashtag_rate", s.shared_hashtag_rate},
                {"tail_hashtags", s.tail_hashtags},
                {"tail_hashtag_rate", s.tail_hashtag_rate}};
    m.outputs = {corpus_path, truth_path};
    m.write(corpus_path.string() + ".manifest.json");
    log.info("generated " + std::to_string(result.corpus.size()) + " records");
    out << "records: " << result.corpus.size() << "\n"
        << "users: " << result.corpus.user_index().size() << "\n"
        << "corpus: " << corpus_path.string() << "\n"
        << "truth: " << truth_path.string() << "\n";
}

void report_ingest(const Corpus& corpus, std::ostream& out) {
    const auto& r = corpus.report();
    out << "lines: " << r.lines_read << "\n"
        << "records: " << corpus.size() << "\n"
        << "skipped_malformed: " << r.malformed << "\n"
        << "skipped_duplicates: " << r.duplicates << "\n";
}

void cmd_ingest(const PipelineConfig& cfg, const std::string& in, const std::string& out_path, std::ostream& out) {
    const auto corpus = ingest(fs::path(in));
    report_ingest(corpus, out);
    if (out_path.empty()) return;
    write_corpus(corpus, fs::path(out_path));
    Manifest m;
    m.subcommand = "ingest";
    m.seed = cfg.seed;
    m.inputs = {in};
    m.outputs = {out_path};
    m.write(out_path + ".manifest.json");
}

void cmd_stats(const PipelineConfig& cfg, const std::string& in, std::size_t top_k, std::ostream& out, const Log& log) {
    const auto corpus = ingest(fs::path(in));
    const std::size_t k = top_k > 0 ? top_k : cfg.top_k_influencers;
    const auto s = stats(corpus, k);
    out << "total_tweets: " << s.total_tweets << "\n"
        << "distinct_users: " << s.distinct_users << "\n"
        << "total_retweets: " << s.total_retweets << "\n"
        << "top_k: " << s.top_k << "\n"
        << "retweet_share_of_top_k: " << text::format_double(s.retweet_share_of_top_k) << "\n";
    const auto ranking = rank_influencers(corpus, k);
    try {
        const auto fit = fit_power_law(ranking);
        out << "power_law_m: " << text::format_double(fit.m) << "\n"
            << "power_law_b: " << text::format_double(fit.b) << "\n"
            << "power_law_r_squared: " << text::format_double(fit.r_squared) << "\n";
        if (fit.degenerate) log.warn("power-law fit is degenerate (m <= 0)");
    } catch (const DataError& e) {
        log.warn(std::string("power-law fit skipped: ") + e.what());
    }
}

void cmd_net_cluster(const PipelineConfig& cfg, const std::string& in, const fs::path& dir, std::ostream& out,
                     const Log& log) {
    const auto corpus = ingest(fs::path(in));
    const auto run = run_net_pipeline(corpus, cfg.net_params());
    for (const auto& w : run.warnings) log.warn(w);
    ensure_dir(dir);

    std::vector<fs::path> outputs;
    auto emit = [&](const std::string& name, auto&& writer) {
        const fs::path p = dir / name;
        write_file(p, writer);
        outputs.push_back(p);
    };
    emit("net_labels.csv", [&](std::ostream& o) { write_labels_csv(o, run.result.user_label); });
    emit("net_influencers.csv", [&](std::ostream& o) { write_labels_csv(o, run.result.influencer_label); });
    emit("net_clusters.csv", [&](std::ostream& o) { write_cluster_report_csv(o, run.thresholded, run.result); });
    emit("ranking.csv", [&](std::ostream& o) {
        o << "rank,author_id,retweet_count\n";
        for (std::size_t i = 0; i < run.ranking.size(); ++i)
            o << i + 1 << ',' << text::csv_field(run.ranking.entries[i].author_id) << ','
              << run.ranking.entries[i].retweet_count << '\n';
    });
    emit("graph.gexf", [&](std::ostream& o) { write_gexf(o, run.thresholded, &run.result); });
    emit("graph.dot", [&](std::ostream& o) { write_dot(o, run.thresholded, &run.result); });
    emit("net_intermediates.json",
         [&](std::ostream& o) { o << intermediates_json(run.intermediates).dump(2) << '\n'; });

    Manifest m;
    m.subcommand = "net-cluster";
    m.seed = cfg.seed;
    m.config = cfg.net_json();
    m.config["effective_threshold"] = run.threshold;
    m.inputs = {in};
    m.outputs = outputs;
    m.write(dir / "manifest.json");

    std::size_t clusters = 0;
    for (const auto& [id, label] : run.result.influencer_label) clusters = std::max<std::size_t>(clusters, label + 1);
    out << "influencers: " << run.ranking.size() << "\n"
        << "superusers: " << run.aggregated.nodes.size() << "\n"
        << "threshold: " << text::format_double(run.threshold) << "\n"
        << "surviving_superusers: " << run.thresholded.nodes.size() << "\n"
        << "clusters: " << clusters << "\n"
        << "labeled_users: " << run.result.user_label.size() << "\n";
    if (run.fit)
        out << "power_law_m: " << text::format_double(run.fit->m) << "\n"
            << "power_law_b: " << text::format_double(run.fit->b) << "\n";
}

void cmd_lang_cluster(const PipelineConfig& cfg, const std::string& in, const fs::path& dir, std::ostream& out,
                      const Log& log) {
    const auto corpus = ingest(fs::path(in));
    LemmaMap lemmas = cfg.no_bundled_lexicon ? LemmaMap{} : LemmaMap::bundled_german();
    StopWordList stops = cfg.no_bundled_lexicon ? StopWordList{} : StopWordList::bundled_german();
    if (!cfg.lemmas.empty()) lemmas = LemmaMap::load(cfg.lemmas);
    if (!cfg.stopwords.empty()) stops = StopWordList::load(cfg.stopwords);

    const auto run = run_lang_pipeline(corpus, cfg.lang_params(), lemmas, stops);
    for (const auto& w : run.warnings) log.warn(w);
    ensure_dir(dir);

    std::vector<fs::path> outputs;
    auto emit = [&](const std::string& name, auto&& writer) {
        const fs::path p = dir / name;
        write_file(p, writer);
        outputs.push_back(p);
    };
    emit("lang_labels.csv", [&](std::ostream& o) { write_labels_csv(o, run.result.user_label); });
    emit("consensus_edges.csv", [&](std::ostream& o) { write_consensus_edges_csv(o, run.consensus, run.density.eps); });
    emit("profiles.csv", [&](std::ostream& o) { write_profiles_csv(o, run.profile); });
    emit("vocabulary.csv", [&](std::ostream& o) {
        o << "lemma,total_count\n";
        for (const auto& lemma : run.vocab.retained)
            o << text::csv_field(lemma) << ',' << run.vocab.total_counts.at(lemma) << '\n';
    });
    emit("lang_intermediates.json",
         [&](std::ostream& o) { o << intermediates_json(run.intermediates).dump(2) << '\n'; });

    Manifest m;
    m.subcommand = "lang-cluster";
    m.seed = cfg.seed;
    m.config = cfg.lang_json();
    m.config["effective_min_pts"] = run.density.min_pts;
    m.config["effective_eps"] = run.density.eps;
    m.config["rounds"] = run.consensus.rounds();
    m.inputs = {in};
    if (!cfg.lemmas.empty()) m.inputs.emplace_back(cfg.lemmas);
    if (!cfg.stopwords.empty()) m.inputs.emplace_back(cfg.stopwords);
    m.outputs = outputs;
    m.write(dir / "manifest.json");

    std::size_t clusters = 0;
    std::size_t noise = 0;
    for (const auto& [id, label] : run.result.user_label) {
        if (label < 0) ++noise;
        else clusters = std::max<std::size_t>(clusters, label + 1);
    }
    out << "distinct_hashtags: " << run.intermediates.all_hashtags.value_or(0) << "\n"
        << "retained_hashtags: " << run.vocab.retained.size() << "\n"
        << "users_with_vector: " << run.features.vectors.size() << "\n"
        << "rounds: " << run.consensus.rounds() << "\n"
        << "min_pts: " << run.density.min_pts << "\n"
        << "eps: " << run.density.eps << "\n"
        << "clusters: " << clusters << "\n"
        << "noise_users: " << noise << "\n";
}

void cmd_compare(const PipelineConfig& cfg, const fs::path& net_dir, const fs::path& lang_dir, const fs::path& dir,
                 std::ostream& out, const Log& log) {
    const fs::path net_labels_path = net_dir / "net_labels.csv";
    const fs::path lang_labels_path = lang_dir / "lang_labels.csv";
    const fs::path net_im_path = net_dir / "net_intermediates.json";
    const fs::path lang_im_path = lang_dir / "lang_intermediates.json";
    const auto net_labels = read_labels_csv(net_labels_path);
    const auto lang_labels = read_labels_csv(lang_labels_path);
    const auto flows = build_sankey(net_labels, lang_labels, cfg.include_noise_source);
    const auto overlap = overlap_fraction(net_labels, lang_labels);
    for (const auto& w : overlap.warnings) log.warn(w);
    const auto report = filter_funnel(read_net_intermediates(net_im_path), read_lang_intermediates(lang_im_path));
    ensure_dir(dir);

    std::vector<fs::path> outputs;
    auto emit = [&](const std::string& name, auto&& writer) {
        const fs::path p = dir / name;
        write_file(p, writer);
        outputs.push_back(p);
    };
    emit("sankey.csv", [&](std::ostream& o) { write_sankey_csv(o, flows); });
    emit("sankey.json", [&](std::ostream& o) { write_sankey_json(o, flows); });
    emit("funnel.csv", [&](std::ostream& o) { write_filter_report_csv(o, report); });
    emit("overlap.json", [&](std::ostream& o) {
        ojson j;
        j["net_unclustered_in_lang"] = overlap.net_unclustered_in_lang;
        j["lang_unclustered_in_net"] = overlap.lang_unclustered_in_net;
        o << j.dump(2) << '\n';
    });

    Manifest m;
    m.subcommand = "compare";
    m.seed = cfg.seed;
    m.config = {{"include_noise_source", cfg.include_noise_source}};
    m.inputs = {net_labels_path, lang_labels_path, net_im_path, lang_im_path};
    m.outputs = outputs;
    m.write(dir / "manifest.json");

    out << format_filter_report_table(report);
    out << "net_unclustered_in_lang: " << text::format_double(overlap.net_unclustered_in_lang) << "\n"
        << "lang_unclustered_in_net: " << text::format_double(overlap.lang_unclustered_in_net) << "\n"
        << "sankey_flows: " << flows.flows.size() << "\n";
}

void cmd_export(const PipelineConfig& cfg, const std::string& in, const std::string& stage, const std::string& format,
                const std::string& out_path, std::ostream& out, const Log& log) {
    const auto corpus = ingest(fs::path(in));
    auto run = run_net_pipeline(corpus, cfg.net_params());
    for (const auto& w : run.warnings) log.warn(w);
    const RetweetGraph* graph = nullptr;
    const NetClusterResult* labels = nullptr;
    if (stage == "users") graph = &run.per_user;
    else if (stage == "raw") graph = &run.aggregated;
    else if (stage == "normalized") graph = &run.weighted;
    else if (stage == "thresholded") {
        graph = &run.thresholded;
        labels = &run.result;
    } else {
        throw ValidationError("unknown stage '" + stage + "' (users, raw, normalized, thresholded)");
    }
    ExportSpec spec;
    spec.format = export_format_from_string(format);
    spec.path = out_path;
    if (fs::path(out_path).has_parent_path()) ensure_dir(fs::path(out_path).parent_path());
    export_graph(*graph, labels, spec);

    Manifest m;
    m.subcommand = "export";
    m.seed = cfg.seed;
    m.config = cfg.net_json();
    m.config["stage"] = stage;
    m.config["format"] = format;
    m.inputs = {in};
    m.outputs = {out_path};
    m.write(out_path + ".manifest.json");
    out << "nodes: " << graph->influencers.size() + graph->nodes.size() << "\n"
        << "edges: " << graph->edge_count() << "\n"
        << "written: " << out_path << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Log log(err, log_level_from_env());
    PipelineConfig cfg;

    CLI::App app{"Community detection on social-media corpora via retweet networks and hashtag consensus clustering",
                 "simclust"};
    app.set_config("--config", "", "Keyed configuration file (TOML or INI); command-line flags override it");
    app.set_version_flag("--version", SIMCLUST_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    add_keyed(app, "seed", cfg.seed, "Random seed")->group("Pipeline");
    add_keyed(app, "top_k_influencers", cfg.top_k_influencers, "Number of influencers")->group("Network");
    add_keyed(app, "threshold_fraction", cfg.threshold_fraction, "Threshold as a fraction of the maximum edge weight")
        ->group("Network");
    add_keyed(app, "threshold", cfg.explicit_threshold, "Explicit edge threshold T (overrides threshold_fraction)")
        ->group("Network");
    add_keyed(app, "min_pts_net", cfg.min_pts_net, "minPts of the modified DBSCAN")->group("Network");
    add_keyed(app, "log_rank_offset", cfg.log_rank_offset, "Edge weights are scaled by log10(rank + offset)")
        ->group("Network");
    add_keyed_flag(app, "no_normalize", cfg.no_normalize, "Skip log-rank weight normalization")->group("Network");
    add_keyed(app, "q_low", cfg.q_low, "Lower vocabulary quantile")->group("Language");
    add_keyed(app, "q_high", cfg.q_high, "Upper vocabulary quantile")->group("Language");
    add_keyed(app, "per_tag_min", cfg.per_tag_min, "A bit is set when a user used the hashtag more often than this")
        ->group("Language");
    add_keyed(app, "per_user_min", cfg.per_user_min, "Users need more retained hashtag uses than this")
        ->group("Language");
    add_keyed(app, "k_list", cfg.k_list, "k of every k-means round")->group("Language");
    add_keyed(app, "min_pts_frac", cfg.min_pts_frac, "Consensus DBSCAN minPts as a fraction of users")
        ->group("Language");
    add_keyed(app, "eps_frac", cfg.eps_frac, "Consensus DBSCAN eps as a fraction of rounds")->group("Language");
    add_keyed(app, "min_pts_lang", cfg.min_pts_lang, "Explicit consensus minPts (0: use min_pts_frac)")
        ->group("Language");
    add_keyed(app, "eps", cfg.eps, "Explicit consensus eps (0: use eps_frac)")->group("Language");
    add_keyed(app, "profile_top_n", cfg.profile_top_n, "Hashtags listed per cluster profile")->group("Language");
    add_keyed(app, "lemmas", cfg.lemmas, "Lemma table (surface<TAB>lemma)")->group("Language");
    add_keyed(app, "stopwords", cfg.stopwords, "Stop-word list")->group("Language");
    add_keyed_flag(app, "no_bundled_lexicon", cfg.no_bundled_lexicon, "Do not use the bundled German lexicon")
        ->group("Language");
    add_keyed_flag(app, "include_noise_source", cfg.include_noise_source, "Add network NOISE users as a Sankey source")
        ->group("Compare");

    // gen
    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic corpus with planted communities");
    gen_cmd->add_option("--out,-o", gen.out, "Corpus output file")->required();
    gen_cmd->add_option("--truth", gen.truth, "Planted-truth CSV (default: <out>.truth.csv)");
    add_keyed(*gen_cmd, "communities", gen.synth.n_communities, "Number of communities");
    add_keyed(*gen_cmd, "influencers_per_community", gen.synth.influencers_per_community, "Influencers per community");
    add_keyed(*gen_cmd, "users_per_community", gen.synth.users_per_community, "Users per community");
    add_keyed(*gen_cmd, "noise_users", gen.synth.noise_users, "Users without a community");
    add_keyed(*gen_cmd, "p_in", gen.synth.p_in, "Probability a member retweet stays in the community");
    add_keyed(*gen_cmd, "retweets_per_user", gen.synth.retweets_per_user, "Mean retweets per user");
    add_keyed(*gen_cmd, "power_law_b", gen.synth.power_law_b, "Popularity curve scale b");
    add_keyed(*gen_cmd, "power_law_m", gen.synth.power_law_m, "Popularity curve slope m");
    add_keyed(*gen_cmd, "hashtags_per_community", gen.synth.hashtags_per_community, "Community vocabulary size");
    add_keyed(*gen_cmd, "shared_hashtags", gen.synth.shared_hashtags, "Hashtags shared by everyone");
    add_keyed(*gen_cmd, "hashtag_posts_per_user", gen.synth.hashtag_posts_per_user, "Mean hashtag posts per user");
    add_keyed(*gen_cmd, "shared_hashtag_rate", gen.synth.shared_hashtag_rate, "Share of posts using a shared hashtag");
    add_keyed(*gen_cmd, "tail_hashtags", gen.synth.tail_hashtags, "Size of the rare-hashtag tail");
    add_keyed(*gen_cmd, "tail_hashtag_rate", gen.synth.tail_hashtag_rate, "Share of posts using a tail hashtag");

    // ingest
    std::string ingest_in;
    std::string ingest_out;
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a corpus file and report skipped lines");
    ingest_cmd->add_option("--in,-i", ingest_in, "Corpus file")->required();
    ingest_cmd->add_option("--out,-o", ingest_out, "Write the canonical corpus here");

    // stats
    std::string stats_in;
    std::size_t stats_k = 0;
    auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics and influencer power-law fit");
    stats_cmd->add_option("--in,-i", stats_in, "Corpus file")->required();
    stats_cmd->add_option("--top-k", stats_k, "K for the top-K retweet share (default: top_k_influencers)");

    // net-cluster
    std::string net_in;
    std::string net_dir;
    auto* net_cmd = app.add_subcommand("net-cluster", "Influencer retweet network clustering");
    net_cmd->add_option("--in,-i", net_in, "Corpus file")->required();
    net_cmd->add_option("--out-dir,-o", net_dir, "Output directory")->required();

    // lang-cluster
    std::string lang_in;
    std::string lang_dir;
    auto* lang_cmd = app.add_subcommand("lang-cluster", "Hashtag consensus clustering");
    lang_cmd->add_option("--in,-i", lang_in, "Corpus file")->required();
    lang_cmd->add_option("--out-dir,-o", lang_dir, "Output directory")->required();

    // compare
    std::string cmp_net;
    std::string cmp_lang;
    std::string cmp_dir;
    auto* cmp_cmd = app.add_subcommand("compare", "Sankey flows and filter funnel of both clusterings");
    cmp_cmd->add_option("--net-dir", cmp_net, "Output directory of net-cluster")->required();
    cmp_cmd->add_option("--lang-dir", cmp_lang, "Output directory of lang-cluster")->required();
    cmp_cmd->add_option("--out-dir,-o", cmp_dir, "Output directory")->required();

    // export
    std::string exp_in;
    std::string exp_stage = "thresholded";
    std::string exp_format = "gexf";
    std::string exp_out;
    auto* exp_cmd = app.add_subcommand("export", "Export the retweet graph at one pipeline stage");
    exp_cmd->add_option("--in,-i", exp_in, "Corpus file")->required();
    exp_cmd->add_option("--stage", exp_stage, "users | raw | normalized | thresholded")->capture_default_str();
    exp_cmd->add_option("--format", exp_format, "gexf | dot | csv")->capture_default_str();
    exp_cmd->add_option("--out,-o", exp_out, "Output file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (gen_cmd->parsed()) cmd_gen(cfg, gen, out, log);
        else if (ingest_cmd->parsed()) cmd_ingest(cfg, ingest_in, ingest_out, out);
        else if (stats_cmd->parsed()) cmd_stats(cfg, stats_in, stats_k, out, log);
        else if (net_cmd->parsed()) cmd_net_cluster(cfg, net_in, net_dir, out, log);
        else if (lang_cmd->parsed()) cmd_lang_cluster(cfg, lang_in, lang_dir, out, log);
        else if (cmp_cmd->parsed()) cmd_compare(cfg, cmp_net, cmp_lang, cmp_dir, out, log);
        else if (exp_cmd->parsed()) cmd_export(cfg, exp_in, exp_stage, exp_format, exp_out, out, log);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kOk;
}

}  // namespace simclust::cli
