#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "simclust/compare.hpp"
#include "simclust/labels.hpp"
#include "simclust/langcluster.hpp"
#include "simclust/netcluster.hpp"

namespace simclust {

enum class ExportFormat { gexf, dot, csv, nested };

std::string to_string(ExportFormat format);
/// Throws ValidationError on an unknown name.
ExportFormat export_format_from_string(const std::string& name);

struct ExportSpec {
    ExportFormat format = ExportFormat::gexf;
    /// When set, the graph must be at this stage.
    std::optional<GraphStage> stage;
    std::filesystem::path path;
};

// Graph exports. Node ids are prefixed "I:" (influencer) and "S:"
// (user or superuser) so an influencer who also retweets stays two nodes.
void write_gexf(std::ostream& out, const RetweetGraph& graph, const NetClusterResult* labels = nullptr);
void write_dot(std::ostream& out, const RetweetGraph& graph, const NetClusterResult* labels = nullptr);
/// node_id,kind,label for every influencer and node.
void write_cluster_report_csv(std::ostream& out, const RetweetGraph& graph, const NetClusterResult& labels);

/// Writes the graph in the requested format. csv needs labels; nested is
/// not a graph format. Throws ValidationError / IoError.
void export_graph(const RetweetGraph& graph, const NetClusterResult* labels, const ExportSpec& spec);

void write_labels_csv(std::ostream& out, const LabelMap& labels);
LabelMap read_labels_csv(std::istream& in);
LabelMap read_labels_csv(const std::filesystem::path& path);

/// user_a,user_b,count for every pair with count >= eps, user_a < user_b.
void write_consensus_edges_csv(std::ostream& out, const ConsensusMatrix& matrix, std::size_t eps);

/// cluster,lemma,lift,in_cluster_count
void write_profiles_csv(std::ostream& out, const ClusterProfile& profile);

void write_sankey_csv(std::ostream& out, const SankeyFlows& flows);
/// {"nodes": [{"name": ...}], "links": [{"source": i, "target": j, "value": n}]}
void write_sankey_json(std::ostream& out, const SankeyFlows& flows);

void write_filter_report_csv(std::ostream& out, const FilterReport& report);
std::string format_filter_report_table(const FilterReport& report);

/// Opens `path` for writing and runs `write` on it; throws IoError on failure.
template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& write);

}  // namespace simclust

#include <fstream>

#include "simclust/error.hpp"

template <typename Writer>
void simclust::write_file(const std::filesystem::path& path, Writer&& write) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write(out);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}
