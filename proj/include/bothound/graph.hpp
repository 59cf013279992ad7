#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bothound/union_find.hpp"

namespace bothound {

enum class NodeKind { kIp = 0, kDomain = 1, kCluster = 2, kArtifact = 3 };
inline constexpr int kNodeKindCount = 4;

enum class Relation { kResolvedTo, kContacted, kMemberOfCluster, kDroppedBy };

enum class Reputation { kUnknown = 0, kClean = 1, kSuspicious = 2, kMalicious = 3 };

std::string to_string(NodeKind kind);
std::string to_string(Relation relation);
std::string to_string(Reputation reputation);
NodeKind node_kind_from_string(const std::string& text);
Relation relation_from_string(const std::string& text);
Reputation reputation_from_string(const std::string& text);

struct NodeId {
    NodeKind kind = NodeKind::kIp;
    std::string key;

    bool operator==(const NodeId&) const = default;
    auto operator<=>(const NodeId&) const = default;
};

/// Per-node intel flags. Merging keeps maxima of numeric values, ORs the
/// booleans and takes the most severe reputation.
struct NodeAnnotations {
    std::optional<double> dga_score;
    bool sinkholed = false;
    bool flux_flagged = false;
    Reputation reputation = Reputation::kUnknown;
    std::int64_t nxdomain_count = 0;

    bool operator==(const NodeAnnotations&) const = default;
};

NodeAnnotations merge_annotations(const NodeAnnotations& base, const NodeAnnotations& update);

struct Node {
    NodeId id;
    NodeAnnotations annotations;
};

struct Edge {
    NodeId a;  // canonical order: a < b
    NodeId b;
    Relation relation = Relation::kContacted;
    std::int64_t weight = 1;
};

struct SuspicionRule {
    std::int64_t min_sinkhole_hits = 1;
    std::int64_t min_dga_domains = 2;
    bool dga_needs_ip = true;
    std::int64_t min_flux_domains = 1;
    std::int64_t min_flux_dga_domains = 1;
};

struct ComponentSummary {
    std::size_t component_id = 0;
    std::array<std::int64_t, kNodeKindCount> node_counts{};
    std::int64_t dga_domain_count = 0;  // domains with dga_score > 0
    std::int64_t sinkhole_hits = 0;
    std::int64_t flux_domains = 0;
    bool suspicious = false;

    std::int64_t total_nodes() const {
        std::int64_t total = 0;
        for (auto c : node_counts) total += c;
        return total;
    }
};

bool is_suspicious(const ComponentSummary& summary, const SuspicionRule& rule);

/// Typed undirected multigraph (one edge per node pair and relation) over
/// observed communications. Keys are unique across kinds; connectivity is
/// maintained incrementally with a disjoint-set.
class KnowledgeGraph {
public:
    /// Creates or merges. Throws on kind conflict for an existing key and
    /// on keys with whitespace/control characters (they must survive the
    /// line-based export).
    void upsert_node(const NodeId& id, const NodeAnnotations& annotations = {});

    /// New edges start at weight 1; repeats increment. Throws on
    /// self-loops and missing endpoints.
    void upsert_edge(const NodeId& a, const NodeId& b, Relation relation);

    bool has_node(const NodeId& id) const;
    std::optional<NodeId> find_key(const std::string& key) const;
    const NodeAnnotations& annotations(const NodeId& id) const;
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    /// Sorted by id / canonical endpoint order.
    std::vector<Node> nodes() const;
    std::vector<Edge> edges() const;

    /// Every node lands in exactly one component; components are ordered
    /// by their smallest member id, members sorted ascending.
    std::vector<std::vector<NodeId>> connected_components() const;

    ComponentSummary component_summary(std::size_t component_id,
                                       const SuspicionRule& rule = {}) const;
    std::vector<ComponentSummary> component_summaries(const SuspicionRule& rule = {}) const;

    /// Component index (in connected_components() order) containing id.
    std::size_t component_of(const NodeId& id) const;

private:
    std::map<NodeId, std::size_t> index_;        // id -> dense index
    std::map<std::string, NodeKind> key_kinds_;  // enforces global key uniqueness
    std::vector<Node> nodes_;
    std::map<std::tuple<NodeId, NodeId, Relation>, std::int64_t> edges_;
    UnionFind components_;
};

std::string export_dot(const KnowledgeGraph& g);
std::string export_structured(const KnowledgeGraph& g);
KnowledgeGraph import_structured(const std::string& text);
KnowledgeGraph load_graph_file(const std::string& path);

}  // namespace bothound
