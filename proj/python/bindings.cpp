#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "simclust/compare.hpp"
#include "simclust/corpus.hpp"
#include "simclust/error.hpp"
#include "simclust/langcluster.hpp"
#include "simclust/netcluster.hpp"
#include "simclust/pipeline.hpp"
#include "simclust/synth.hpp"

namespace py = pybind11;
using namespace simclust;

namespace {

py::dict net_intermediates_dict(const NetIntermediates& im) {
    py::dict d;
    d["all_users"] = im.all_users;
    d["retweeting_users"] = im.retweeting_users;
    d["influencer_retweeting_users"] = im.influencer_retweeting_users;
    d["users_above_threshold"] = im.users_above_threshold;
    d["all_tweets"] = im.all_tweets;
    d["retweets"] = im.retweets;
    d["influencer_retweets"] = im.influencer_retweets;
    d["retweets_above_threshold"] = im.retweets_above_threshold;
    return d;
}

py::dict lang_intermediates_dict(const LangIntermediates& im) {
    py::dict d;
    d["all_hashtags"] = im.all_hashtags;
    d["retained_hashtags"] = im.retained_hashtags;
    d["all_users"] = im.all_users;
    d["users_above_min"] = im.users_above_min;
    d["users_with_vector"] = im.users_with_vector;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Retweet-network and hashtag consensus clustering";
    m.attr("NOISE") = kNoise;
    m.attr("UNDEFINED") = kUndefined;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<TweetRecord>(m, "TweetRecord")
        .def(py::init<>())
        .def_readwrite("tweet_id", &TweetRecord::tweet_id)
        .def_readwrite("author_id", &TweetRecord::author_id)
        .def_readwrite("author_handle", &TweetRecord::author_handle)
        .def_readwrite("created_at", &TweetRecord::created_at)
        .def_readwrite("text", &TweetRecord::text)
        .def_readwrite("hashtags", &TweetRecord::hashtags)
        .def_readwrite("retweet_of", &TweetRecord::retweet_of)
        .def("__repr__", [](const TweetRecord& r) { return "TweetRecord(" + r.tweet_id + ")"; });

    py::class_<IngestReport>(m, "IngestReport")
        .def_readonly("lines_read", &IngestReport::lines_read)
        .def_readonly("malformed", &IngestReport::malformed)
        .def_readonly("duplicates", &IngestReport::duplicates);

    py::class_<Corpus>(m, "Corpus")
        .def_static("from_records", [](std::vector<TweetRecord> records) { return Corpus::from_records(std::move(records)); },
                    py::arg("records"))
        .def_static("load", [](const std::filesystem::path& path) { return ingest(path); }, py::arg("path"))
        .def_static("parse", [](const std::string& jsonl) {
            std::istringstream in(jsonl);
            return ingest(in);
        }, py::arg("jsonl"))
        .def("records", [](const Corpus& c) { return std::vector<TweetRecord>(c.records().begin(), c.records().end()); })
        .def("save", [](const Corpus& c, const std::filesystem::path& path) { write_corpus(c, path); }, py::arg("path"))
        .def("retweet_counts", &Corpus::retweet_counts)
        .def("authors_with_handle", &Corpus::authors_with_handle, py::arg("handle"))
        .def_property_readonly("report", &Corpus::report)
        .def("__len__", &Corpus::size);

    py::class_<CorpusStats>(m, "CorpusStats")
        .def_readonly("total_tweets", &CorpusStats::total_tweets)
        .def_readonly("distinct_users", &CorpusStats::distinct_users)
        .def_readonly("total_retweets", &CorpusStats::total_retweets)
        .def_readonly("top_k", &CorpusStats::top_k)
        .def_readonly("retweet_share_of_top_k", &CorpusStats::retweet_share_of_top_k);
    m.def("stats", &stats, py::arg("corpus"), py::arg("top_k") = 100);

    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("n_communities", &SynthConfig::n_communities)
        .def_readwrite("influencers_per_community", &SynthConfig::influencers_per_community)
        .def_readwrite("users_per_community", &SynthConfig::users_per_community)
        .def_readwrite("noise_users", &SynthConfig::noise_users)
        .def_readwrite("p_in", &SynthConfig::p_in)
        .def_readwrite("retweets_per_user", &SynthConfig::retweets_per_user)
        .def_readwrite("power_law_b", &SynthConfig::power_law_b)
        .def_readwrite("power_law_m", &SynthConfig::power_law_m)
        .def_readwrite("hashtags_per_community", &SynthConfig::hashtags_per_community)
        .def_readwrite("shared_hashtags", &SynthConfig::shared_hashtags)
        .def_readwrite("hashtag_posts_per_user", &SynthConfig::hashtag_posts_per_user)
        .def_readwrite("shared_hashtag_rate", &SynthConfig::shared_hashtag_rate)
        .def_readwrite("tail_hashtags", &SynthConfig::tail_hashtags)
        .def_readwrite("tail_hashtag_rate", &SynthConfig::tail_hashtag_rate)
        .def_readwrite("seed", &SynthConfig::seed);

    m.def("generate", [](const SynthConfig& config) {
        auto out = generate(config);
        return py::make_tuple(std::move(out.corpus), out.truth.influencer_community, out.truth.user_community);
    }, py::arg("config"), "Returns (corpus, influencer_community, user_community).");
    m.def("adjusted_rand_index", &adjusted_rand_index, py::arg("a"), py::arg("b"));

    m.def("rank_influencers", [](const Corpus& corpus, std::size_t k) {
        std::vector<std::pair<std::string, std::uint64_t>> out;
        for (const auto& e : rank_influencers(corpus, k).entries) out.emplace_back(e.author_id, e.retweet_count);
        return out;
    }, py::arg("corpus"), py::arg("k") = 100);

    py::class_<PowerLawFit>(m, "PowerLawFit")
        .def_readonly("m", &PowerLawFit::m)
        .def_readonly("b", &PowerLawFit::b)
        .def_readonly("r_squared", &PowerLawFit::r_squared)
        .def_readonly("degenerate", &PowerLawFit::degenerate);
    m.def("fit_power_law", [](const std::vector<double>& counts) { return fit_power_law(counts); },
          py::arg("counts_by_rank"));

    m.def("modified_dbscan", py::overload_cast<const Adjacency&, std::size_t>(&modified_dbscan),
          py::arg("adjacency"), py::arg("min_pts") = 2);
    m.def("dbscan", &dbscan, py::arg("adjacency"), py::arg("min_pts"));
    m.def("default_params", [](std::size_t n, std::size_t rounds, double min_pts_frac, double eps_frac) {
        const auto p = default_params(n, rounds, min_pts_frac, eps_frac);
        return py::make_tuple(p.min_pts, p.eps);
    }, py::arg("n_users"), py::arg("rounds"), py::arg("min_pts_frac") = 0.02, py::arg("eps_frac") = 0.8);

    m.def("run_net_pipeline", [](const Corpus& corpus, std::size_t top_k, double threshold_fraction,
                                 std::optional<double> threshold, std::size_t min_pts, bool normalize,
                                 double rank_offset) {
        NetPipelineParams p;
        p.top_k = top_k;
        p.threshold_fraction = threshold_fraction;
        p.explicit_threshold = threshold;
        p.min_pts = min_pts;
        p.normalize = normalize;
        p.rank_offset = rank_offset;
        NetRun run;
        {
            py::gil_scoped_release release;
            run = run_net_pipeline(corpus, p);
        }
        py::dict d;
        d["influencer_label"] = run.result.influencer_label;
        d["superuser_label"] = run.result.superuser_label;
        d["user_label"] = run.result.user_label;
        d["threshold"] = run.threshold;
        d["superusers"] = run.aggregated.nodes.size();
        d["intermediates"] = net_intermediates_dict(run.intermediates);
        d["warnings"] = run.warnings;
        return d;
    }, py::arg("corpus"), py::arg("top_k") = 100, py::arg("threshold_fraction") = 0.0065,
       py::arg("threshold") = py::none(), py::arg("min_pts") = 2, py::arg("normalize") = true,
       py::arg("rank_offset") = 1.0);

    m.def("run_lang_pipeline", [](const Corpus& corpus, std::vector<std::size_t> k_list, std::uint64_t seed,
                                  double q_low, double q_high, std::optional<std::size_t> min_pts,
                                  std::optional<std::size_t> eps, bool bundled_lexicon) {
        LangPipelineParams p;
        if (!k_list.empty()) p.k_list = std::move(k_list);
        p.seed = seed;
        p.q_low = q_low;
        p.q_high = q_high;
        p.min_pts = min_pts;
        p.eps = eps;
        const LemmaMap lemmas = bundled_lexicon ? LemmaMap::bundled_german() : LemmaMap{};
        const StopWordList stops = bundled_lexicon ? StopWordList::bundled_german() : StopWordList{};
        LangRun run;
        {
            py::gil_scoped_release release;
            run = run_lang_pipeline(corpus, p, lemmas, stops);
        }
        py::dict profiles;
        for (const auto& [cluster, entries] : run.profile.clusters) {
            py::list rows;
            for (const auto& e : entries) rows.append(py::make_tuple(e.lemma, e.lift, e.in_cluster_count));
            profiles[py::int_(cluster)] = rows;
        }
        py::dict d;
        d["user_label"] = run.result.user_label;
        d["vocabulary"] = run.vocab.retained;
        d["min_pts"] = run.density.min_pts;
        d["eps"] = run.density.eps;
        d["rounds"] = run.consensus.rounds();
        d["profiles"] = profiles;
        d["intermediates"] = lang_intermediates_dict(run.intermediates);
        d["warnings"] = run.warnings;
        return d;
    }, py::arg("corpus"), py::arg("k_list") = std::vector<std::size_t>{}, py::arg("seed") = 0,
       py::arg("q_low") = 0.97, py::arg("q_high") = 0.9998, py::arg("min_pts") = py::none(),
       py::arg("eps") = py::none(), py::arg("bundled_lexicon") = true);

    m.def("build_sankey", [](const LabelMap& net, const LabelMap& lang, bool include_noise_source) {
        std::vector<std::tuple<ClusterId, ClusterId, std::uint64_t>> out;
        for (const auto& f : build_sankey(net, lang, include_noise_source).flows)
            out.emplace_back(f.source, f.target, f.count);
        return out;
    }, py::arg("net_labels"), py::arg("lang_labels"), py::arg("include_noise_source") = false);

    m.def("overlap_fraction", [](const LabelMap& net, const LabelMap& lang) {
        const auto o = overlap_fraction(net, lang);
        return py::make_tuple(o.net_unclustered_in_lang, o.lang_unclustered_in_net);
    }, py::arg("net_labels"), py::arg("lang_labels"));
}
