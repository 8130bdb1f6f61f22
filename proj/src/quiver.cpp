#include "derange/quiver.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace derange {

void Quiver::reindex() {
    vpos.clear();
    apos.clear();
    require(!vertices.empty(), "quiver has no vertices");
    for (size_t i = 0; i < vertices.size(); ++i) {
        bool fresh = vpos.emplace(vertices[i], i).second;
        require(fresh, "duplicate vertex id " + std::to_string(vertices[i]));
    }
    for (size_t i = 0; i < arrows.size(); ++i) {
        const Arrow& a = arrows[i];
        bool fresh = apos.emplace(a.id, i).second;
        require(fresh, "duplicate arrow id " + std::to_string(a.id));
        require(vpos.count(a.from) && vpos.count(a.to),
                "arrow " + std::to_string(a.id) + " touches an undeclared vertex");
    }
}

size_t Quiver::vindex(int vertex_id) const {
    auto it = vpos.find(vertex_id);
    require(it != vpos.end(), "unknown vertex " + std::to_string(vertex_id));
    return it->second;
}

const Arrow& Quiver::arrow(int arrow_id) const {
    auto it = apos.find(arrow_id);
    require(it != apos.end(), "unknown arrow " + std::to_string(arrow_id));
    return arrows[it->second];
}

bool Quiver::connected() const {
    if (vertices.empty()) return false;
    std::vector<std::vector<size_t>> adj(vertices.size());
    for (const Arrow& a : arrows) {
        size_t u = vindex(a.from), v = vindex(a.to);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(vertices.size(), 0);
    std::deque<size_t> queue{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!queue.empty()) {
        size_t u = queue.front();
        queue.pop_front();
        for (size_t v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                queue.push_back(v);
            }
    }
    return reached == vertices.size();
}

bool Quiver::triangular() const {
    // Kahn's algorithm; acyclic iff every vertex gets popped.
    std::vector<size_t> indeg(vertices.size(), 0);
    std::vector<std::vector<size_t>> out(vertices.size());
    for (const Arrow& a : arrows) {
        out[vindex(a.from)].push_back(vindex(a.to));
        ++indeg[vindex(a.to)];
    }
    std::deque<size_t> queue;
    for (size_t v = 0; v < vertices.size(); ++v)
        if (indeg[v] == 0) queue.push_back(v);
    size_t popped = 0;
    while (!queue.empty()) {
        size_t u = queue.front();
        queue.pop_front();
        ++popped;
        for (size_t v : out[u])
            if (--indeg[v] == 0) queue.push_back(v);
    }
    return popped == vertices.size();
}

int path_source(const Quiver& q, const PathWord& w) {
    return w.trivial() ? w.vertex : q.arrow(w.arrows.front()).from;
}

int path_target(const Quiver& q, const PathWord& w) {
    return w.trivial() ? w.vertex : q.arrow(w.arrows.back()).to;
}

void check_path(const Quiver& q, const PathWord& w) {
    if (w.trivial()) {
        q.vindex(w.vertex);
        return;
    }
    for (size_t i = 0; i + 1 < w.arrows.size(); ++i)
        require(q.arrow(w.arrows[i]).to == q.arrow(w.arrows[i + 1]).from,
                "path breaks between arrows " + std::to_string(w.arrows[i]) + " and " +
                    std::to_string(w.arrows[i + 1]));
}

PathWord concat(const Quiver& q, const PathWord& a, const PathWord& b) {
    require(path_target(q, a) == path_source(q, b), "paths do not compose");
    if (a.trivial()) return b;
    if (b.trivial()) return a;
    PathWord r = a;
    r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
    return r;
}

std::string word_key(const PathWord& w) {
    if (w.trivial()) return "e" + std::to_string(w.vertex);
    std::ostringstream os;
    for (size_t i = 0; i < w.arrows.size(); ++i) {
        if (i) os << '.';
        os << w.arrows[i];
    }
    return os.str();
}

bool word_equal(const PathWord& a, const PathWord& b) {
    if (a.trivial() != b.trivial()) return false;
    return a.trivial() ? a.vertex == b.vertex : a.arrows == b.arrows;
}

bool word_less(const PathWord& a, const PathWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.trivial()) return a.vertex < b.vertex;
    return a.arrows < b.arrows;
}

void validate(Presentation& pres) {
    require(pres.length_cap >= 2, "length_cap must be at least 2");
    Fp fp(pres.prime);
    pres.quiver.reindex();
    require(pres.quiver.connected(), "NotConnected: quiver is not connected");
    for (const Relation& rel : pres.relations) {
        require(!rel.terms.empty(), "empty relation");
        int src = -1, tgt = -1;
        std::vector<std::string> keys;
        for (const auto& [coeff, path] : rel.terms) {
            require(fp.reduce(coeff) != 0, "relation has a zero coefficient");
            check_path(pres.quiver, path);
            require(path.length() >= 2, "relation term shorter than 2 arrows");
            require(path.length() <= static_cast<size_t>(pres.length_cap),
                    "relation term longer than length_cap");
            if (src == -1) {
                src = path_source(pres.quiver, path);
                tgt = path_target(pres.quiver, path);
            } else {
                require(src == path_source(pres.quiver, path) &&
                            tgt == path_target(pres.quiver, path),
                        "relation terms are not parallel");
            }
            keys.push_back(word_key(path));
        }
        std::sort(keys.begin(), keys.end());
        require(std::adjacent_find(keys.begin(), keys.end()) == keys.end(),
                "relation repeats a path");
    }
}

}  // namespace derange
