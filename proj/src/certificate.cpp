#include "rcm/certificate.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace rcm {

std::string Certificate::serialize() const {
    std::ostringstream out;
    out << "rcmcert 1\n" << colour_char(colour) << '\n';
    std::size_t r = cliques.empty() ? 0 : cliques.front().size();
    out << r << ' ' << cliques.size() << '\n';
    for (const auto& q : cliques) {
        for (std::size_t i = 0; i < q.size(); ++i)
            out << (i ? " " : "") << q[i];
        out << '\n';
    }
    for (const auto& [u, v] : witness_edges) out << "edge " << u << ' ' << v << '\n';
    return out.str();
}

Certificate Certificate::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "rcmcert 1")
        throw ParseError("rcmcert parse: malformed header");
    if (!std::getline(in, line) || (line != "R" && line != "B"))
        throw ParseError("rcmcert parse: bad colour line");
    Certificate cert;
    cert.colour = line == "R" ? Colour::red : Colour::blue;
    if (!std::getline(in, line)) throw ParseError("rcmcert parse: missing r n line");
    std::istringstream rn(line);
    long long r = 0, n = 0;
    if (!(rn >> r >> n) || r < 1 || n < 0)
        throw ParseError("rcmcert parse: bad r n line");
    std::string token;
    if (rn >> token) throw ParseError("rcmcert parse: bad r n line");
    for (long long i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw ParseError("rcmcert parse: missing clique " + std::to_string(i));
        std::istringstream row(line);
        std::vector<int> clique;
        int v;
        while (row >> v) clique.push_back(v);
        if (static_cast<long long>(clique.size()) != r)
            throw ParseError("rcmcert parse: clique " + std::to_string(i) +
                             " has wrong size");
        cert.cliques.push_back(std::move(clique));
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string kw;
        int u, v;
        if (!(row >> kw >> u >> v) || kw != "edge" || (row >> token))
            throw ParseError("rcmcert parse: bad trailing line");
        cert.witness_edges.emplace_back(u, v);
    }
    return cert;
}

void attach_connectivity_witness(const Colouring& g, Certificate& cert) {
    cert.witness_edges.clear();
    if (cert.cliques.empty()) return;
    int n = g.vertex_count();
    int root = cert.cliques.front().front();

    // BFS tree of the certificate colour's component around the root.
    std::vector<int> parent(static_cast<std::size_t>(n), -2);
    parent[static_cast<std::size_t>(root)] = -1;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        g.neighbours(u, cert.colour).for_each([&](int v) {
            if (parent[static_cast<std::size_t>(v)] == -2) {
                parent[static_cast<std::size_t>(v)] = u;
                queue.push(v);
            }
        });
    }

    std::vector<char> included(static_cast<std::size_t>(n), 0);
    included[static_cast<std::size_t>(root)] = 1;
    std::vector<std::pair<int, int>> edges;
    for (const auto& q : cert.cliques) {
        int rep = q.front();
        int at = rep;
        while (at >= 0 && !included[static_cast<std::size_t>(at)]) {
            included[static_cast<std::size_t>(at)] = 1;
            int p = parent[static_cast<std::size_t>(at)];
            if (p < 0) break;  // unreachable rep is left for the verifier to flag
            edges.emplace_back(std::min(at, p), std::max(at, p));
            at = p;
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    cert.witness_edges = std::move(edges);
}

}  // namespace rcm
