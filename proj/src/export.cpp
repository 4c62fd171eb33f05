#include "simclust/export.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "simclust/error.hpp"
#include "simclust/text.hpp"

namespace simclust {

std::string to_string(ExportFormat format) {
    switch (format) {
        case ExportFormat::gexf: return "gexf";
        case ExportFormat::dot: return "dot";
        case ExportFormat::csv: return "csv";
        case ExportFormat::nested: return "nested";
    }
    return "unknown";
}

ExportFormat export_format_from_string(const std::string& name) {
    if (name == "gexf") return ExportFormat::gexf;
    if (name == "dot") return ExportFormat::dot;
    if (name == "csv") return ExportFormat::csv;
    if (name == "nested" || name == "json") return ExportFormat::nested;
    throw ValidationError("unknown export format '" + name + "'");
}

namespace {

struct NodeAttrs {
    std::string id;
    std::string label;
    std::string kind;
    std::size_t rank = 0;
    std::size_t member_count = 0;
    std::optional<std::string> cluster;
};

std::optional<std::string> lookup_label(const LabelMap* map, const std::string& key) {
    if (!map) return std::nullopt;
    auto it = map->find(key);
    if (it == map->end()) return std::nullopt;
    return label_to_string(it->second);
}

std::vector<NodeAttrs> collect_nodes(const RetweetGraph& graph, const NetClusterResult* labels) {
    std::vector<NodeAttrs> nodes;
    nodes.reserve(graph.influencers.size() + graph.nodes.size());
    for (std::size_t i = 0; i < graph.influencers.size(); ++i) {
        const auto& id = graph.influencers[i];
        nodes.push_back({"I:" + id, id, "influencer", i + 1, 0,
                         lookup_label(labels ? &labels->influencer_label : nullptr, id)});
    }
    for (std::size_t n = 0; n < graph.nodes.size(); ++n) {
        const auto id = graph.node_id(n);
        nodes.push_back({"S:" + id, id, graph.aggregated ? "superuser" : "user", 0, graph.nodes[n].members.size(),
                         lookup_label(labels ? &labels->superuser_label : nullptr, id)});
    }
    return nodes;
}

}  // namespace

void write_gexf(std::ostream& out, const RetweetGraph& graph, const NetClusterResult* labels) {
    using text::xml_escape;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
        << "  <meta>\n"
        << "    <creator>simclust</creator>\n"
        << "    <description>retweet graph, stage " << to_string(graph.stage)
        << (graph.aggregated ? ", superusers" : ", users") << "</description>\n"
        << "  </meta>\n"
        << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n"
        << "    <attributes class=\"node\">\n"
        << "      <attribute id=\"kind\" title=\"kind\" type=\"string\"/>\n"
        << "      <attribute id=\"rank\" title=\"rank\" type=\"integer\"/>\n"
        << "      <attribute id=\"member_count\" title=\"member_count\" type=\"integer\"/>\n"
        << "      <attribute id=\"cluster\" title=\"cluster\" type=\"string\"/>\n"
        << "    </attributes>\n"
        << "    <nodes>\n";
    for (const auto& n : collect_nodes(graph, labels)) {
        out << "      <node id=\"" << xml_escape(n.id) << "\" label=\"" << xml_escape(n.label) << "\">\n"
            << "        <attvalues>\n"
            << "          <attvalue for=\"kind\" value=\"" << n.kind << "\"/>\n"
            << "          <attvalue for=\"rank\" value=\"" << n.rank << "\"/>\n"
            << "          <attvalue for=\"member_count\" value=\"" << n.member_count << "\"/>\n";
        if (n.cluster) out << "          <attvalue for=\"cluster\" value=\"" << *n.cluster << "\"/>\n";
        out << "        </attvalues>\n"
            << "      </node>\n";
    }
    out << "    </nodes>\n"
        << "    <edges>\n";
    std::size_t edge_id = 0;
    for (std::size_t n = 0; n < graph.nodes.size(); ++n) {
        const std::string source = "S:" + graph.node_id(n);
        for (const auto& e : graph.nodes[n].edges) {
            out << "      <edge id=\"" << edge_id++ << "\" source=\"" << xml_escape(source) << "\" target=\""
                << xml_escape("I:" + graph.influencers.at(e.influencer)) << "\" weight=\""
                << text::format_double(e.weight) << "\"/>\n";
        }
    }
    out << "    </edges>\n"
        << "  </graph>\n"
        << "</gexf>\n";
}

void write_dot(std::ostream& out, const RetweetGraph& graph, const NetClusterResult* labels) {
    using text::dot_escape;
    out << "digraph retweets {\n"
        << "  // stage " << to_string(graph.stage) << (graph.aggregated ? ", superusers" : ", users") << "\n";
    for (const auto& n : collect_nodes(graph, labels)) {
        out << "  \"" << dot_escape(n.id) << "\" [label=\"" << dot_escape(n.label) << "\", kind=\"" << n.kind
            << "\", rank=" << n.rank << ", member_count=" << n.member_count;
        if (n.cluster) out << ", cluster=\"" << *n.cluster << "\"";
        out << "];\n";
    }
    for (std::size_t n = 0; n < graph.nodes.size(); ++n) {
        const std::string source = "S:" + graph.node_id(n);
        for (const auto& e : graph.nodes[n].edges) {
            out << "  \"" << dot_escape(source) << "\" -> \"" << dot_escape("I:" + graph.influencers.at(e.influencer))
                << "\" [weight=" << text::format_double(e.weight) << "];\n";
        }
    }
    out << "}\n";
}

void write_cluster_report_csv(std::ostream& out, const RetweetGraph& graph, const NetClusterResult& labels) {
    out << "node_id,kind,label\n";
    for (const auto& n : collect_nodes(graph, &labels))
        out << text::csv_field(n.label) << ',' << n.kind << ',' << n.cluster.value_or("NOISE") << '\n';
}

void export_graph(const RetweetGraph& graph, const NetClusterResult* labels, const ExportSpec& spec) {
    if (spec.stage && *spec.stage != graph.stage)
        throw ValidationError("export_graph: graph is at stage " + to_string(graph.stage) + ", requested " +
                              to_string(*spec.stage));
    switch (spec.format) {
        case ExportFormat::gexf:
            write_file(spec.path, [&](std::ostream& out) { write_gexf(out, graph, labels); });
            return;
        case ExportFormat::dot:
            write_file(spec.path, [&](std::ostream& out) { write_dot(out, graph, labels); });
            return;
        case ExportFormat::csv:
            if (!labels) throw ValidationError("export_graph: csv cluster report needs cluster labels");
            write_file(spec.path, [&](std::ostream& out) { write_cluster_report_csv(out, graph, *labels); });
            return;
        case ExportFormat::nested:
            throw ValidationError("export_graph: nested format is only available for Sankey flows");
    }
}

void write_labels_csv(std::ostream& out, const LabelMap& labels) {
    out << "id,label\n";
    for (const auto& [id, label] : labels) out << text::csv_field(id) << ',' << label_to_string(label) << '\n';
}

LabelMap read_labels_csv(std::istream& in) {
    LabelMap labels;
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        auto fields = text::split_csv_line(line);
        if (fields.size() != 2) throw ValidationError("labels file line " + std::to_string(line_no) + ": expected 2 columns");
        labels[fields[0]] = label_from_string(std::string(text::trim(fields[1])));
    }
    return labels;
}

LabelMap read_labels_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open labels file: " + path.string());
    return read_labels_csv(in);
}

void write_consensus_edges_csv(std::ostream& out, const ConsensusMatrix& matrix, std::size_t eps) {
    std::vector<std::size_t> order(matrix.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return matrix.users()[a] < matrix.users()[b]; });
    out << "user_a,user_b,count\n";
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const auto count = matrix.at(order[a], order[b]);
            if (count < eps) continue;
            out << text::csv_field(matrix.users()[order[a]]) << ',' << text::csv_field(matrix.users()[order[b]]) << ','
                << count << '\n';
        }
    }
}

void write_profiles_csv(std::ostream& out, const ClusterProfile& profile) {
    out << "cluster,lemma,lift,in_cluster_count\n";
    for (const auto& [cluster, entries] : profile.clusters)
        for (const auto& e : entries)
            out << label_to_string(cluster) << ',' << text::csv_field(e.lemma) << ',' << text::format_double(e.lift)
                << ',' << e.in_cluster_count << '\n';
}

void write_sankey_csv(std::ostream& out, const SankeyFlows& flows) {
    out << "source,target,count\n";
    for (const auto& f : flows.flows)
        out << label_to_string(f.source) << ',' << label_to_string(f.target) << ',' << f.count << '\n';
}

void write_sankey_json(std::ostream& out, const SankeyFlows& flows) {
    std::map<ClusterId, std::size_t> sources;
    std::map<ClusterId, std::size_t> targets;
    for (const auto& f : flows.flows) {
        sources.emplace(f.source, 0);
        targets.emplace(f.target, 0);
    }
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    std::size_t next = 0;
    for (auto& [id, index] : sources) {
        index = next++;
        doc["nodes"].push_back({{"name", "network " + label_to_string(id)}, {"side", "network"}, {"cluster", label_to_string(id)}});
    }
    for (auto& [id, index] : targets) {
        index = next++;
        doc["nodes"].push_back({{"name", "language " + label_to_string(id)}, {"side", "language"}, {"cluster", label_to_string(id)}});
    }
    doc["links"] = nlohmann::ordered_json::array();
    for (const auto& f : flows.flows)
        doc["links"].push_back({{"source", sources.at(f.source)}, {"target", targets.at(f.target)}, {"value", f.count}});
    out << doc.dump(2) << '\n';
}

void write_filter_report_csv(std::ostream& out, const FilterReport& report) {
    out << "chain,stage,items_in,items_out,filtered_fraction\n";
    for (const auto& s : report.stages)
        out << s.chain << ',' << text::csv_field(s.name) << ',' << s.items_in << ',' << s.items_out << ','
            << text::format_double(s.filtered_fraction) << '\n';
}

std::string format_filter_report_table(const FilterReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(20) << "chain" << std::setw(32) << "stage" << std::right << std::setw(12) << "in"
        << std::setw(12) << "out" << std::setw(11) << "filtered" << '\n';
    for (const auto& s : report.stages) {
        out << std::left << std::setw(20) << s.chain << std::setw(32) << s.name << std::right << std::setw(12)
            << s.items_in << std::setw(12) << s.items_out << std::setw(10) << std::fixed << std::setprecision(2)
            << 100.0 * s.filtered_fraction << "%\n";
    }
    return out.str();
}

}  // namespace simclust
