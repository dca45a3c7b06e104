#pragma once

#include "qiso/fingerprint.hpp"
#include "qiso/graph_json.hpp"
#include "qiso/moves.hpp"

#include <cstdint>
#include <random>

namespace qiso {

struct ReductionTrace {
    std::string initial_hash;
    std::vector<Move> moves;
    PlaneGraph final_graph;
};

enum class ReductionStrategy { heuristic, random };

struct ReductionOptions {
    ReductionStrategy strategy = ReductionStrategy::heuristic;
    std::uint64_t budget = 1'000'000;  // move applications, lookahead included
    std::uint64_t seed = 0;            // random strategy only
    int lookahead = 2;
};

class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(std::string msg, ReductionTrace partial)
        : std::runtime_error(std::move(msg)), partial_(std::move(partial)) {}
    const ReductionTrace& partial() const { return partial_; }

private:
    ReductionTrace partial_;
};

inline std::string graph_hash(const PlaneGraph& g) { return sha256_hex(graph_to_json(g).dump()); }

/// Code identifying a connected plane graph up to orientation-preserving
/// map isomorphism: the least breadth-first encoding over all root darts.
inline std::vector<int> map_code(const PlaneGraph& g) {
    if (g.edge_count() == 0) return {static_cast<int>(g.vertex_count())};
    std::map<EdgeEnd, std::pair<int, int>> pos;
    for (const auto& [v, rot] : g.rotations())
        for (std::size_t i = 0; i < rot.size(); ++i) pos[rot[i]] = {v, static_cast<int>(i)};
    std::vector<int> best;
    std::map<int, int> label, start;
    for (const auto& [root, where] : pos) {
        label.clear();
        start.clear();
        std::vector<int> code, queue{where.first};
        label[where.first] = 0;
        start[where.first] = where.second;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const int v = queue[qi];
            const auto& rot = g.rotation(v);
            const int d = static_cast<int>(rot.size());
            code.push_back(d);
            for (int k = 0; k < d; ++k) {
                const EdgeEnd h = rot[static_cast<std::size_t>((start[v] + k) % d)];
                const auto [w, pw] = pos.at({h.edge, 1 - h.side});
                if (!label.count(w)) {
                    label[w] = static_cast<int>(queue.size());
                    start[w] = pw;
                    queue.push_back(w);
                }
                const int dw = static_cast<int>(g.degree(w));
                code.push_back(label[w]);
                code.push_back((pw - start[w] + dw) % dw);
            }
        }
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

namespace detail {

class Reducer {
public:
    Reducer(const ReductionOptions& opt) : opt_(opt), rng_(opt.seed) {}

    ReductionTrace run(const PlaneGraph& start) {
        validate_embedding(start);
        if (!is_connected(start.abstract())) throw EmbeddingError(EmbeddingError::Kind::Disconnected, "reduction needs a connected graph");
        trace_.initial_hash = graph_hash(start);
        PlaneGraph g = start;
        while (true) {
            g = close(g, &trace_.moves);
            if (g.is_single_vertex()) break;
            visited_.insert(map_code(g));
            std::vector<Move> step = choose(g);
            if (step.empty()) step = deepen(g);
            for (const auto& m : step) {
                g = apply(g, m);
                trace_.moves.push_back(m);
            }
        }
        trace_.final_graph = g;
        return trace_;
    }

private:
    PlaneGraph apply(const PlaneGraph& g, const Move& m) {
        if (++spent_ > opt_.budget) {
            trace_.final_graph = g;
            throw BudgetExhausted("reduction budget of " + std::to_string(opt_.budget) + " move applications exhausted", trace_);
        }
        return apply_move(g, m);
    }

    // Applies forced moves until none is left.
    PlaneGraph close(PlaneGraph g, std::vector<Move>* log) {
        while (true) {
            auto forced = forced_moves(g);
            if (forced.empty()) return g;
            std::size_t pick = 0;
            if (opt_.strategy == ReductionStrategy::random)
                pick = std::uniform_int_distribution<std::size_t>(0, forced.size() - 1)(rng_);
            g = apply(g, forced[pick]);
            if (log) log->push_back(forced[pick]);
        }
    }

    // Smallest edge count reachable within `depth` further Delta/Wye steps.
    std::size_t potential(const PlaneGraph& g, int depth) {
        if (g.is_single_vertex() || depth <= 0) return g.edge_count();
        std::size_t best = g.edge_count();
        for (const auto& m : delta_wye_moves(g)) best = std::min(best, potential(close(apply(g, m), nullptr), depth - 1));
        return best;
    }

    // Next Delta/Wye move by potential; its forced follow-ups are applied by
    // the main loop. Moves leading back to a visited state are skipped.
    std::vector<Move> choose(const PlaneGraph& g) {
        const auto cands = delta_wye_moves(g);
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> scored;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const PlaneGraph next = close(apply(g, cands[i]), nullptr);
            if (!next.is_single_vertex() && visited_.count(map_code(next))) continue;
            scored.push_back({{potential(next, opt_.lookahead - 1), next.edge_count()}, i});
        }
        if (scored.empty()) return {};
        std::size_t pick = std::min_element(scored.begin(), scored.end())->second;
        if (opt_.strategy == ReductionStrategy::random && std::bernoulli_distribution(0.5)(rng_))
            pick = scored[std::uniform_int_distribution<std::size_t>(0, scored.size() - 1)(rng_)].second;
        return {cands[pick]};
    }

    // Iterative deepening over Delta/Wye sequences (forced moves closed in
    // between) until the edge count drops or the graph is a point.
    std::vector<Move> deepen(const PlaneGraph& g) {
        const std::size_t target = g.edge_count();
        for (int depth = 1;; ++depth) {
            std::vector<Move> path;
            if (dfs(g, depth, target, path)) return path;
        }
    }

    bool dfs(const PlaneGraph& g, int depth, std::size_t target, std::vector<Move>& path) {
        if (depth == 0) return false;
        for (const auto& m : delta_wye_moves(g)) {
            const std::size_t mark = path.size();
            path.push_back(m);
            PlaneGraph next = apply(g, m);
            next = close(std::move(next), &path);
            if (next.is_single_vertex() || (next.edge_count() < target && !visited_.count(map_code(next)))) return true;
            if (dfs(next, depth - 1, target, path)) return true;
            path.resize(mark);
        }
        return false;
    }

    ReductionOptions opt_;
    std::mt19937_64 rng_;
    std::uint64_t spent_ = 0;
    std::set<std::vector<int>> visited_;
    ReductionTrace trace_;
};

}  // namespace detail

/// Reduces a connected plane graph to a single vertex. Throws
/// BudgetExhausted (carrying the partial trace) when the budget runs out.
inline ReductionTrace reduce_to_point(const PlaneGraph& g, const ReductionOptions& opt = {}) {
    return detail::Reducer(opt).run(g);
}

struct TraceCheck {
    bool ok = true;
    long failed_step = -1;  // -1: all steps legal
    std::string message;
};

/// Replays a trace from the initial graph.
inline TraceCheck verify_trace(const PlaneGraph& initial, const ReductionTrace& trace) {
    if (!trace.initial_hash.empty() && trace.initial_hash != graph_hash(initial))
        return {false, -1, "initial graph hash does not match"};
    PlaneGraph g = initial;
    for (std::size_t i = 0; i < trace.moves.size(); ++i) {
        try {
            g = apply_move(g, trace.moves[i]);
        } catch (const IllegalMove& e) {
            return {false, static_cast<long>(i), "step " + std::to_string(i) + ": " + e.what()};
        }
    }
    if (!g.is_single_vertex())
        return {false, -1,
                "final graph has " + std::to_string(g.vertex_count()) + " vertices and " + std::to_string(g.edge_count()) +
                    " edges, not a single vertex"};
    return {};
}

inline Json move_to_json(const Move& m) {
    Json j{{"kind", to_string(m.kind)}, {"vertices", m.vertices}, {"edges", m.edges}};
    if (m.created_vertex >= 0) j["created_vertex"] = m.created_vertex;
    return j;
}

inline Move move_from_json(const Json& j) {
    Move m;
    m.kind = move_kind_from_string(j.at("kind").get<std::string>());
    m.vertices = j.at("vertices").get<std::vector<int>>();
    m.edges = j.at("edges").get<std::vector<int>>();
    m.created_vertex = j.value("created_vertex", -1);
    return m;
}

inline Json trace_to_json(const ReductionTrace& t) {
    Json j{{"initial_hash", t.initial_hash}, {"moves", Json::array()}};
    for (const auto& m : t.moves) j["moves"].push_back(move_to_json(m));
    j["final"] = graph_to_json(t.final_graph);
    return j;
}

inline ReductionTrace trace_from_json(const Json& j) {
    ReductionTrace t;
    t.initial_hash = j.value("initial_hash", "");
    for (const auto& m : j.at("moves")) t.moves.push_back(move_from_json(m));
    if (j.contains("final")) t.final_graph = plane_graph_from_json(j.at("final"));
    return t;
}

}  // namespace qiso
