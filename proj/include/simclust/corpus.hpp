#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace simclust {

/// One post. Retweets carry the original author's id in retweet_of.
struct TweetRecord {
    std::string tweet_id;
    std::string author_id;
    std::string author_handle;
    std::int64_t created_at = 0;  // UTC epoch seconds
    std::string text;
    std::vector<std::string> hashtags;  // without '#', original casing
    std::optional<std::string> retweet_of;

    bool is_retweet() const { return retweet_of.has_value(); }

    friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
    friend auto operator<=>(const TweetRecord&, const TweetRecord&) = default;
};

/// Returns an empty string when the record satisfies its invariants,
/// otherwise a description of the first violation.
std::string validate_record(const TweetRecord& record);

/// Counters collected while building a corpus.
struct IngestReport {
    std::size_t lines_read = 0;
    std::size_t malformed = 0;
    std::size_t duplicates = 0;

    std::size_t skipped() const { return malformed + duplicates; }
    friend bool operator==(const IngestReport&, const IngestReport&) = default;
};

/// Immutable collection of tweet records plus the indexes derived from them.
///
/// Records are held in canonical order (created_at, then tweet_id) so a
/// corpus does not depend on the order its input lines or shards arrived in.
class Corpus {
public:
    Corpus() = default;

    /// Validates and deduplicates records; the first occurrence of a
    /// tweet_id wins. Throws ValidationError on an invalid record.
    static Corpus from_records(std::vector<TweetRecord> records, IngestReport report = {});

    std::span<const TweetRecord> records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    /// author_id -> positions in records().
    const std::map<std::string, std::vector<std::size_t>>& user_index() const { return user_index_; }
    /// original author_id -> number of retweets of that author.
    const std::map<std::string, std::uint64_t>& retweet_counts() const { return retweet_counts_; }
    const IngestReport& report() const { return report_; }

    /// Author ids whose handle matches, compared case-insensitively.
    std::vector<std::string> authors_with_handle(std::string_view handle) const;

    /// Recomputes both indexes from records() and compares them with the
    /// stored ones.
    bool indexes_consistent() const;

    /// Union of two shard corpora. Associative and commutative: when the
    /// same tweet_id appears in both, the smaller record is kept.
    friend Corpus merge(const Corpus& a, const Corpus& b);

private:
    void rebuild_indexes();

    std::vector<TweetRecord> records_;
    std::map<std::string, std::vector<std::size_t>> user_index_;
    std::map<std::string, std::uint64_t> retweet_counts_;
    IngestReport report_;
};

/// Parses one line of the record format. Returns nullopt on malformed input.
std::optional<TweetRecord> parse_record(std::string_view line);
std::string serialize_record(const TweetRecord& record);

/// Reads line-delimited records. Malformed and duplicate lines are skipped
/// and counted. Throws DataError when no line parses.
Corpus ingest(std::istream& in);
/// Throws IoError when the file cannot be read.
Corpus ingest(const std::filesystem::path& path);

void write_corpus(const Corpus& corpus, std::ostream& out);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

struct CorpusStats {
    std::size_t total_tweets = 0;
    std::size_t distinct_users = 0;
    std::size_t total_retweets = 0;
    std::size_t top_k = 0;
    double retweet_share_of_top_k = 0.0;
};

/// Authors sorted by retweets received, descending; ties by id ascending.
/// At most k entries.
std::vector<std::pair<std::string, std::uint64_t>> most_retweeted(const Corpus& corpus, std::size_t k);

/// Throws ValidationError when top_k is 0.
CorpusStats stats(const Corpus& corpus, std::size_t top_k);

}  // namespace simclust
