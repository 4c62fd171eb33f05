#include "simclust/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "simclust/error.hpp"

namespace simclust {

void NetPipelineParams::validate() const {
    if (top_k < 1) throw ValidationError("top_k_influencers must be >= 1");
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        throw ValidationError("threshold_fraction must lie in (0,1)");
    if (explicit_threshold && !(*explicit_threshold >= 0.0)) throw ValidationError("threshold must be >= 0");
    if (min_pts < 1) throw ValidationError("min_pts_net must be >= 1");
    if (!(rank_offset >= 0.0) || !std::isfinite(rank_offset)) throw ValidationError("log_rank_offset must be >= 0");
}

NetRun run_net_pipeline(const Corpus& corpus, const NetPipelineParams& params) {
    params.validate();
    NetRun run;
    run.result.params.min_pts = params.min_pts;
    run.result.params.normalized = params.normalize;
    run.result.params.rank_offset = params.rank_offset;

    auto& im = run.intermediates;
    im.all_users = corpus.user_index().size();
    im.all_tweets = corpus.size();
    std::uint64_t retweets = 0;
    std::map<std::string, bool> retweeters;
    for (const auto& r : corpus.records()) {
        if (!r.retweet_of) continue;
        ++retweets;
        retweeters[r.author_id] = true;
    }
    im.retweeting_users = retweeters.size();
    im.retweets = retweets;

    run.ranking = rank_influencers(corpus, params.top_k);
    if (run.ranking.empty()) {
        run.warnings.push_back("corpus contains no retweets; network clustering is empty");
        im.influencer_retweeting_users = 0;
        im.users_above_threshold = 0;
        im.influencer_retweets = 0;
        im.retweets_above_threshold = 0;
        run.thresholded.stage = GraphStage::thresholded;
        return run;
    }
    try {
        run.fit = fit_power_law(run.ranking);
    } catch (const DataError& e) {
        run.warnings.push_back(std::string("power-law fit skipped: ") + e.what());
    }

    run.per_user = build_edges(corpus, run.ranking);
    run.aggregated = aggregate_superusers(run.per_user);
    run.weighted = params.normalize ? normalize_weights(run.aggregated, run.ranking, params.rank_offset) : run.aggregated;
    run.threshold = params.explicit_threshold ? *params.explicit_threshold
                                              : default_threshold(run.weighted, params.threshold_fraction);
    run.thresholded = apply_threshold(run.weighted, run.threshold);
    run.result.params.threshold = run.threshold;

    auto labels = modified_dbscan(run.thresholded, params.min_pts);
    labels.params = run.result.params;
    run.result = assign_superusers_and_users(run.thresholded, std::move(labels));

    im.influencer_retweeting_users = run.per_user.nodes.size();
    im.users_above_threshold = run.thresholded.member_count();
    im.influencer_retweets = static_cast<std::uint64_t>(std::llround(run.per_user.total_weight()));
    // raw retweet counts carried by the surviving edges
    std::map<std::vector<std::uint32_t>, const SuperuserNode*> raw_by_key;
    for (const auto& node : run.aggregated.nodes) raw_by_key.emplace(node.key, &node);
    double surviving = 0.0;
    for (const auto& node : run.thresholded.nodes) {
        const auto* raw = raw_by_key.at(node.key);
        for (const auto& e : node.edges) surviving += raw->weight_to(e.influencer);
    }
    im.retweets_above_threshold = static_cast<std::uint64_t>(std::llround(surviving));
    return run;
}

std::vector<std::size_t> default_k_list() {
    std::vector<std::size_t> ks;
    for (std::size_t k = 5; k <= 75; k += 5) ks.push_back(k);
    return ks;
}

void LangPipelineParams::validate() const {
    if (!(q_low > 0.0 && q_low <= 1.0) || !(q_high > 0.0 && q_high <= 1.0) || q_low > q_high)
        throw ValidationError("quantiles must satisfy 0 < q_low <= q_high <= 1");
    if (k_list.empty()) throw ValidationError("k_list must not be empty");
    for (auto k : k_list)
        if (k < 1) throw ValidationError("k_list entries must be >= 1");
    if (!(min_pts_frac > 0.0 && min_pts_frac < 1.0)) throw ValidationError("min_pts_frac must lie in (0,1)");
    if (!(eps_frac > 0.0 && eps_frac < 1.0)) throw ValidationError("eps_frac must lie in (0,1)");
    if (min_pts && *min_pts < 1) throw ValidationError("min_pts_lang must be >= 1");
    if (eps && *eps < 1) throw ValidationError("eps must be >= 1");
}

LangRun run_lang_pipeline(const Corpus& corpus, const LangPipelineParams& params, const LemmaMap& lemmas,
                          const StopWordList& stops) {
    params.validate();
    LangRun run;
    run.result.params.k_list = params.k_list;
    run.result.params.base_seed = params.seed;
    auto& im = run.intermediates;
    im.all_users = corpus.user_index().size();

    run.per_user = normalize_hashtags(corpus, lemmas, stops);
    const auto totals = total_counts(run.per_user);
    im.all_hashtags = totals.size();
    if (totals.empty()) {
        run.warnings.push_back("corpus contains no usable hashtags; language clustering is empty");
        im.retained_hashtags = 0;
        im.users_above_min = 0;
        im.users_with_vector = 0;
        return run;
    }
    run.vocab = build_vocabulary(totals, params.q_low, params.q_high);
    im.retained_hashtags = run.vocab.retained.size();
    if (run.vocab.retained.empty()) {
        run.warnings.push_back("vocabulary filter retained no hashtags; language clustering is empty");
        im.users_above_min = 0;
        im.users_with_vector = 0;
        return run;
    }

    run.features = build_feature_vectors(run.per_user, run.vocab, params.per_tag_min, params.per_user_min);
    im.users_above_min = run.features.users_above_min;
    im.users_with_vector = run.features.vectors.size();
    const std::size_t n = run.features.vectors.size();
    for (auto k : params.k_list) {
        if (k <= n) {
            run.k_used.push_back(k);
        } else {
            run.warnings.push_back("k=" + std::to_string(k) + " exceeds the " + std::to_string(n) +
                                   " vector-bearing users; round skipped");
        }
    }
    if (run.k_used.empty()) {
        run.warnings.push_back("no k-means round can run; language clustering is empty");
        return run;
    }

    // seeds follow the configured round index so skipped rounds do not shift later seeds
    std::vector<KMeansRound> rounds;
    for (std::size_t r = 0; r < params.k_list.size(); ++r)
        if (params.k_list[r] <= n) rounds.push_back({params.k_list[r], params.seed + r});
    run.consensus = build_consensus(run.features.vectors, rounds);

    run.density = default_params(n, run.consensus.rounds(), params.min_pts_frac, params.eps_frac);
    if (params.min_pts) run.density.min_pts = *params.min_pts;
    if (params.eps) run.density.eps = std::min(*params.eps, run.consensus.rounds());
    auto result = dbscan_consensus(run.consensus, run.density.min_pts, run.density.eps);
    result.params.k_list = run.k_used;
    result.params.base_seed = params.seed;
    run.result = std::move(result);
    run.profile = profile_clusters(run.result, run.per_user, run.vocab, params.profile_top_n);
    for (const auto& w : run.profile.warnings) run.warnings.push_back(w);
    return run;
}

}  // namespace simclust
