#include "simclust/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "simclust/error.hpp"
#include "simclust/text.hpp"

namespace simclust {

namespace {

bool canonical_less(const TweetRecord& a, const TweetRecord& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    return a.tweet_id < b.tweet_id;
}

}  // namespace

std::string validate_record(const TweetRecord& r) {
    if (r.tweet_id.empty()) return "empty tweet id";
    if (r.author_id.empty()) return "empty author id";
    for (const auto& tag : r.hashtags) {
        if (tag.empty()) return "empty hashtag";
        if (tag.find('#') != std::string::npos) return "hashtag contains '#': " + tag;
        if (text::has_whitespace(tag)) return "hashtag contains whitespace: " + tag;
    }
    if (r.retweet_of) {
        if (r.retweet_of->empty()) return "empty retweet_of";
        if (*r.retweet_of == r.author_id) return "retweet_of equals author_id";
    }
    return {};
}

Corpus Corpus::from_records(std::vector<TweetRecord> records, IngestReport report) {
    Corpus corpus;
    std::unordered_set<std::string> seen;
    seen.reserve(records.size());
    corpus.records_.reserve(records.size());
    for (auto& r : records) {
        if (auto problem = validate_record(r); !problem.empty())
            throw ValidationError("invalid record '" + r.tweet_id + "': " + problem);
        if (!seen.insert(r.tweet_id).second) {
            ++report.duplicates;
            continue;
        }
        corpus.records_.push_back(std::move(r));
    }
    std::stable_sort(corpus.records_.begin(), corpus.records_.end(), canonical_less);
    corpus.report_ = report;
    corpus.rebuild_indexes();
    return corpus;
}

void Corpus::rebuild_indexes() {
    user_index_.clear();
    retweet_counts_.clear();
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        user_index_[r.author_id].push_back(i);
        if (r.retweet_of) ++retweet_counts_[*r.retweet_of];
    }
}

bool Corpus::indexes_consistent() const {
    Corpus copy;
    copy.records_ = records_;
    copy.rebuild_indexes();
    return copy.user_index_ == user_index_ && copy.retweet_counts_ == retweet_counts_;
}

std::vector<std::string> Corpus::authors_with_handle(std::string_view handle) const {
    const std::string wanted = text::to_lower(handle);
    std::set<std::string> found;
    for (const auto& r : records_)
        if (text::to_lower(r.author_handle) == wanted) found.insert(r.author_id);
    return {found.begin(), found.end()};
}

Corpus merge(const Corpus& a, const Corpus& b) {
    std::map<std::string, const TweetRecord*> by_id;
    std::size_t cross_duplicates = 0;
    for (const Corpus* part : {&a, &b}) {
        for (const auto& r : part->records_) {
            auto [it, inserted] = by_id.try_emplace(r.tweet_id, &r);
            if (!inserted) {
                ++cross_duplicates;
                if (r < *it->second) it->second = &r;
            }
        }
    }
    Corpus out;
    out.records_.reserve(by_id.size());
    for (const auto& [id, r] : by_id) out.records_.push_back(*r);
    std::stable_sort(out.records_.begin(), out.records_.end(), canonical_less);
    out.report_.lines_read = a.report_.lines_read + b.report_.lines_read;
    out.report_.malformed = a.report_.malformed + b.report_.malformed;
    out.report_.duplicates = a.report_.duplicates + b.report_.duplicates + cross_duplicates;
    out.rebuild_indexes();
    return out;
}

std::optional<TweetRecord> parse_record(std::string_view line) {
    using nlohmann::json;
    const json j = json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;

    TweetRecord r;
    auto id = j.find("id");
    auto author = j.find("author_id");
    auto created = j.find("created_at");
    if (id == j.end() || !id->is_string()) return std::nullopt;
    if (author == j.end() || !author->is_string()) return std::nullopt;
    if (created == j.end() || !created->is_number_integer()) return std::nullopt;
    r.tweet_id = id->get<std::string>();
    r.author_id = author->get<std::string>();
    r.created_at = created->get<std::int64_t>();

    if (auto h = j.find("author_handle"); h != j.end()) {
        if (!h->is_string()) return std::nullopt;
        r.author_handle = h->get<std::string>();
    }
    if (auto t = j.find("text"); t != j.end()) {
        if (!t->is_string()) return std::nullopt;
        r.text = t->get<std::string>();
    }
    if (auto tags = j.find("hashtags"); tags != j.end()) {
        if (!tags->is_array()) return std::nullopt;
        for (const auto& tag : *tags) {
            if (!tag.is_string()) return std::nullopt;
            std::string s = tag.get<std::string>();
            if (!s.empty() && s.front() == '#') s.erase(0, 1);
            r.hashtags.push_back(std::move(s));
        }
    }
    if (auto rt = j.find("retweet_of"); rt != j.end() && !rt->is_null()) {
        if (!rt->is_string()) return std::nullopt;
        r.retweet_of = rt->get<std::string>();
    }
    if (!validate_record(r).empty()) return std::nullopt;
    return r;
}

std::string serialize_record(const TweetRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.tweet_id;
    j["author_id"] = r.author_id;
    j["author_handle"] = r.author_handle;
    j["created_at"] = r.created_at;
    j["text"] = r.text;
    j["hashtags"] = r.hashtags;
    if (r.retweet_of) j["retweet_of"] = *r.retweet_of;
    return j.dump();
}

Corpus ingest(std::istream& in) {
    std::vector<TweetRecord> records;
    IngestReport report;
    std::string line;
    while (std::getline(in, line)) {
        if (text::trim(line).empty()) continue;
        ++report.lines_read;
        if (auto r = parse_record(line)) {
            records.push_back(std::move(*r));
        } else {
            ++report.malformed;
        }
    }
    if (in.bad()) throw IoError("read error while ingesting corpus");
    if (records.empty()) throw DataError("corpus is empty: no parseable record lines");
    return Corpus::from_records(std::move(records), report);
}

Corpus ingest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    return ingest(in);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
    for (const auto& r : corpus.records()) out << serialize_record(r) << '\n';
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write corpus file: " + path.string());
    write_corpus(corpus, out);
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::pair<std::string, std::uint64_t>> most_retweeted(const Corpus& corpus, std::size_t k) {
    std::vector<std::pair<std::string, std::uint64_t>> all(corpus.retweet_counts().begin(),
                                                           corpus.retweet_counts().end());
    // retweet_counts is keyed by id, so a stable sort on count keeps ids ascending within ties
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (all.size() > k) all.resize(k);
    return all;
}

CorpusStats stats(const Corpus& corpus, std::size_t top_k) {
    if (top_k == 0) throw ValidationError("stats: top_k must be >= 1");
    CorpusStats s;
    s.top_k = top_k;
    s.total_tweets = corpus.size();
    s.distinct_users = corpus.user_index().size();
    for (const auto& [author, n] : corpus.retweet_counts()) s.total_retweets += n;
    if (s.total_retweets == 0) return s;
    std::uint64_t top = 0;
    for (const auto& [author, n] : most_retweeted(corpus, top_k)) top += n;
    s.retweet_share_of_top_k = static_cast<double>(top) / static_cast<double>(s.total_retweets);
    return s;
}

}  // namespace simclust
