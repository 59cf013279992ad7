#include "bothound/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bothound/errors.hpp"

namespace bothound {

namespace {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InputError("invalid number in graph file: " + text);
    return value;
}

std::int64_t parse_int(const std::string& text) {
    std::int64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InputError("invalid integer in graph file: " + text);
    return value;
}

void validate_key(const std::string& key) {
    if (key.empty()) throw std::invalid_argument("node key is empty");
    for (char c : key) {
        if (std::isspace(static_cast<unsigned char>(c)) ||
            std::iscntrl(static_cast<unsigned char>(c)))
            throw std::invalid_argument("node key contains whitespace/control characters: " +
                                        key);
    }
}

std::string annotation_text(const NodeAnnotations& a) {
    // Sorted key=value pairs, defaults omitted so merge-equal graphs
    // export identically.
    std::ostringstream out;
    if (a.dga_score) out << " dgaScore=" << format_double(*a.dga_score);
    if (a.flux_flagged) out << " fluxFlagged=1";
    if (a.nxdomain_count > 0) out << " nxdomainCount=" << a.nxdomain_count;
    if (a.reputation != Reputation::kUnknown) out << " reputation=" << to_string(a.reputation);
    if (a.sinkholed) out << " sinkholed=1";
    return out.str();
}

}  // namespace

std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::kIp: return "IP";
        case NodeKind::kDomain: return "Domain";
        case NodeKind::kCluster: return "Cluster";
        case NodeKind::kArtifact: return "Artifact";
    }
    return "?";
}

std::string to_string(Relation relation) {
    switch (relation) {
        case Relation::kResolvedTo: return "resolvedTo";
        case Relation::kContacted: return "contacted";
        case Relation::kMemberOfCluster: return "memberOfCluster";
        case Relation::kDroppedBy: return "droppedBy";
    }
    return "?";
}

std::string to_string(Reputation reputation) {
    switch (reputation) {
        case Reputation::kUnknown: return "unknown";
        case Reputation::kClean: return "clean";
        case Reputation::kSuspicious: return "suspicious";
        case Reputation::kMalicious: return "malicious";
    }
    return "unknown";
}

NodeKind node_kind_from_string(const std::string& text) {
    if (text == "IP") return NodeKind::kIp;
    if (text == "Domain") return NodeKind::kDomain;
    if (text == "Cluster") return NodeKind::kCluster;
    if (text == "Artifact") return NodeKind::kArtifact;
    throw InputError("unknown node kind: " + text);
}

Relation relation_from_string(const std::string& text) {
    if (text == "resolvedTo") return Relation::kResolvedTo;
    if (text == "contacted") return Relation::kContacted;
    if (text == "memberOfCluster") return Relation::kMemberOfCluster;
    if (text == "droppedBy") return Relation::kDroppedBy;
    throw InputError("unknown edge relation: " + text);
}

Reputation reputation_from_string(const std::string& text) {
    if (text == "unknown") return Reputation::kUnknown;
    if (text == "clean") return Reputation::kClean;
    if (text == "suspicious") return Reputation::kSuspicious;
    if (text == "malicious") return Reputation::kMalicious;
    throw InputError("unknown reputation: " + text);
}

NodeAnnotations merge_annotations(const NodeAnnotations& base, const NodeAnnotations& update) {
    NodeAnnotations out = base;
    if (update.dga_score) {
        out.dga_score = out.dga_score ? std::max(*out.dga_score, *update.dga_score)
                                      : *update.dga_score;
    }
    out.sinkholed = out.sinkholed || update.sinkholed;
    out.flux_flagged = out.flux_flagged || update.flux_flagged;
    out.reputation = std::max(out.reputation, update.reputation);
    out.nxdomain_count = std::max(out.nxdomain_count, update.nxdomain_count);
    return out;
}

bool is_suspicious(const ComponentSummary& summary, const SuspicionRule& rule) {
    if (summary.sinkhole_hits >= rule.min_sinkhole_hits) return true;
    const std::int64_t ips = summary.node_counts[static_cast<std::size_t>(NodeKind::kIp)];
    if (summary.dga_domain_count >= rule.min_dga_domains && (!rule.dga_needs_ip || ips >= 1))
        return true;
    if (summary.flux_domains >= rule.min_flux_domains &&
        summary.dga_domain_count >= rule.min_flux_dga_domains)
        return true;
    return false;
}

void KnowledgeGraph::upsert_node(const NodeId& id, const NodeAnnotations& annotations) {
    validate_key(id.key);
    const auto kind_it = key_kinds_.find(id.key);
    if (kind_it != key_kinds_.end() && kind_it->second != id.kind)
        throw std::invalid_argument("kind conflict for key '" + id.key + "': already " +
                                    to_string(kind_it->second) + ", upserted as " +
                                    to_string(id.kind));

    const auto it = index_.find(id);
    if (it != index_.end()) {
        Node& node = nodes_[it->second];
        node.annotations = merge_annotations(node.annotations, annotations);
        return;
    }
    index_.emplace(id, nodes_.size());
    key_kinds_.emplace(id.key, id.kind);
    nodes_.push_back(Node{id, annotations});
    components_.add();
}

void KnowledgeGraph::upsert_edge(const NodeId& a, const NodeId& b, Relation relation) {
    if (a == b) throw std::invalid_argument("self-loop on node " + a.key);
    const auto ia = index_.find(a);
    const auto ib = index_.find(b);
    if (ia == index_.end()) throw std::invalid_argument("edge endpoint missing: " + a.key);
    if (ib == index_.end()) throw std::invalid_argument("edge endpoint missing: " + b.key);

    const NodeId& lo = std::min(a, b);
    const NodeId& hi = std::max(a, b);
    ++edges_[std::make_tuple(lo, hi, relation)];
    components_.unite(ia->second, ib->second);
}

bool KnowledgeGraph::has_node(const NodeId& id) const { return index_.count(id) > 0; }

std::optional<NodeId> KnowledgeGraph::find_key(const std::string& key) const {
    const auto it = key_kinds_.find(key);
    if (it == key_kinds_.end()) return std::nullopt;
    return NodeId{it->second, key};
}

const NodeAnnotations& KnowledgeGraph::annotations(const NodeId& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown node: " + id.key);
    return nodes_[it->second].annotations;
}

std::vector<Node> KnowledgeGraph::nodes() const {
    std::vector<Node> out;
    out.reserve(nodes_.size());
    for (const auto& [id, idx] : index_) out.push_back(nodes_[idx]);
    return out;
}

std::vector<Edge> KnowledgeGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& [key, weight] : edges_) {
        out.push_back(Edge{std::get<0>(key), std::get<1>(key), std::get<2>(key), weight});
    }
    return out;
}

std::vector<std::vector<NodeId>> KnowledgeGraph::connected_components() const {
    std::map<std::size_t, std::vector<NodeId>> by_root;
    for (const auto& [id, idx] : index_) {
        by_root[components_.find(idx)].push_back(id);
    }
    std::vector<std::vector<NodeId>> out;
    out.reserve(by_root.size());
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

namespace {

ComponentSummary summarize_members(const KnowledgeGraph& g, std::size_t component_id,
                                   const std::vector<NodeId>& members,
                                   const SuspicionRule& rule) {
    ComponentSummary summary;
    summary.component_id = component_id;
    for (const NodeId& id : members) {
        ++summary.node_counts[static_cast<std::size_t>(id.kind)];
        const NodeAnnotations& a = g.annotations(id);
        if (a.sinkholed) ++summary.sinkhole_hits;
        if (id.kind == NodeKind::kDomain) {
            if (a.dga_score && *a.dga_score > 0.0) ++summary.dga_domain_count;
            if (a.flux_flagged) ++summary.flux_domains;
        }
    }
    summary.suspicious = is_suspicious(summary, rule);
    return summary;
}

}  // namespace

ComponentSummary KnowledgeGraph::component_summary(std::size_t component_id,
                                                   const SuspicionRule& rule) const {
    const auto components = connected_components();
    if (component_id >= components.size())
        throw std::invalid_argument("unknown component " + std::to_string(component_id));
    return summarize_members(*this, component_id, components[component_id], rule);
}

std::vector<ComponentSummary> KnowledgeGraph::component_summaries(
    const SuspicionRule& rule) const {
    const auto components = connected_components();
    std::vector<ComponentSummary> out;
    out.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i)
        out.push_back(summarize_members(*this, i, components[i], rule));
    return out;
}

std::size_t KnowledgeGraph::component_of(const NodeId& id) const {
    const auto components = connected_components();
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (std::binary_search(components[i].begin(), components[i].end(), id)) return i;
    }
    throw std::invalid_argument("unknown node: " + id.key);
}

std::string export_dot(const KnowledgeGraph& g) {
    static const char* kShapes[kNodeKindCount] = {"box", "ellipse", "hexagon", "diamond"};
    std::ostringstream out;
    out << "graph bothound {\n";
    for (const Node& node : g.nodes()) {
        out << "  \"" << to_string(node.id.kind) << ":" << node.id.key << "\" [shape="
            << kShapes[static_cast<std::size_t>(node.id.kind)] << "];\n";
    }
    for (const Edge& edge : g.edges()) {
        out << "  \"" << to_string(edge.a.kind) << ":" << edge.a.key << "\" -- \""
            << to_string(edge.b.kind) << ":" << edge.b.key << "\" [label=\""
            << to_string(edge.relation) << "\", weight=" << edge.weight << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string export_structured(const KnowledgeGraph& g) {
    std::ostringstream out;
    out << "# graph v1\n";
    for (const Node& node : g.nodes()) {
        out << "node " << to_string(node.id.kind) << ' ' << node.id.key
            << annotation_text(node.annotations) << '\n';
    }
    for (const Edge& edge : g.edges()) {
        out << "edge " << to_string(edge.a.kind) << ' ' << edge.a.key << ' '
            << to_string(edge.b.kind) << ' ' << edge.b.key << ' ' << to_string(edge.relation)
            << ' ' << edge.weight << '\n';
    }
    return out.str();
}

KnowledgeGraph import_structured(const std::string& text) {
    KnowledgeGraph g;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string what;
        fields >> what;
        const std::string where = " on graph line " + std::to_string(line_no);

        if (what == "node") {
            std::string kind_text, key;
            if (!(fields >> kind_text >> key))
                throw InputError("malformed node entry" + where + ": " + line);
            NodeAnnotations a;
            std::string pair;
            while (fields >> pair) {
                const std::size_t eq = pair.find('=');
                if (eq == std::string::npos)
                    throw InputError("malformed annotation '" + pair + "'" + where);
                const std::string name = pair.substr(0, eq);
                const std::string value = pair.substr(eq + 1);
                if (name == "dgaScore") a.dga_score = parse_double(value);
                else if (name == "fluxFlagged") a.flux_flagged = value == "1";
                else if (name == "nxdomainCount") a.nxdomain_count = parse_int(value);
                else if (name == "reputation") a.reputation = reputation_from_string(value);
                else if (name == "sinkholed") a.sinkholed = value == "1";
                else throw InputError("unknown annotation '" + name + "'" + where);
            }
            try {
                g.upsert_node(NodeId{node_kind_from_string(kind_text), key}, a);
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string(e.what()) + where);
            }
        } else if (what == "edge") {
            std::string kind_a, key_a, kind_b, key_b, relation_text;
            std::int64_t weight = 0;
            if (!(fields >> kind_a >> key_a >> kind_b >> key_b >> relation_text >> weight) ||
                weight < 1)
                throw InputError("malformed edge entry" + where + ": " + line);
            const NodeId a{node_kind_from_string(kind_a), key_a};
            const NodeId b{node_kind_from_string(kind_b), key_b};
            const Relation relation = relation_from_string(relation_text);
            try {
                for (std::int64_t i = 0; i < weight; ++i) g.upsert_edge(a, b, relation);
            } catch (const std::invalid_argument& e) {
                throw InputError(std::string(e.what()) + where);
            }
        } else {
            throw InputError("unknown graph entry '" + what + "'" + where);
        }
    }
    return g;
}

KnowledgeGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return import_structured(buffer.str());
}

}  // namespace bothound
