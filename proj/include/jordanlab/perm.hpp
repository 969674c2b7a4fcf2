#pragma once

// Permutations and permutation groups with deterministic Schreier-Sims
// stabilizer chains. Base points are chosen in natural order, so group
// orders and transversals are reproducible across runs and platforms.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jlab {

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline bool perm_is_identity(const Perm& p) {
    for (int i = 0; i < (int)p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

// apply a first, then b
inline Perm perm_mul(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw std::invalid_argument("permutation degree mismatch");
    Perm c(a.size());
    for (int i = 0; i < (int)a.size(); ++i) c[i] = b[a[i]];
    return c;
}

inline Perm perm_inv(const Perm& a) {
    Perm c(a.size());
    for (int i = 0; i < (int)a.size(); ++i) c[a[i]] = i;
    return c;
}

inline void perm_validate(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= (int)p.size() || seen[v])
            throw std::invalid_argument("not a permutation");
        seen[v] = 1;
    }
}

// Accepts cycle notation "(0,1,2)(3,4)" or an image list "[1,0,2]".
// Whitespace is ignored. Points outside [0,n) are rejected.
inline Perm perm_parse(const std::string& text, int n) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s.push_back(c);
    if (s.empty() || s == "()" || s == "id" || s == "Id") return perm_identity(n);
    Perm p = perm_identity(n);
    if (s[0] == '[') {
        if (s.back() != ']') throw std::invalid_argument("unterminated image list");
        std::stringstream ss(s.substr(1, s.size() - 2));
        std::string tok;
        std::vector<int> img;
        while (std::getline(ss, tok, ','))
            img.push_back(std::stoi(tok));
        if ((int)img.size() != n) throw std::invalid_argument("image list has wrong degree");
        p = img;
        perm_validate(p);
        return p;
    }
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
        size_t j = s.find(')', i);
        if (j == std::string::npos) throw std::invalid_argument("unterminated cycle");
        std::stringstream ss(s.substr(i + 1, j - i - 1));
        std::string tok;
        std::vector<int> cyc;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) cyc.push_back(std::stoi(tok));
        for (int v : cyc)
            if (v < 0 || v >= n) throw std::invalid_argument("cycle point out of range");
        for (size_t k = 0; k < cyc.size(); ++k) {
            if (p[cyc[k]] != cyc[k]) throw std::invalid_argument("point repeated in cycles");
        }
        for (size_t k = 0; k + 1 < cyc.size(); ++k) p[cyc[k]] = cyc[k + 1];
        if (!cyc.empty()) p[cyc.back()] = cyc.front();
        i = j + 1;
    }
    perm_validate(p);
    return p;
}

inline std::string perm_cycles(const Perm& p) {
    std::string out;
    std::vector<char> done(p.size(), 0);
    for (int i = 0; i < (int)p.size(); ++i) {
        if (done[i] || p[i] == i) continue;
        out += '(';
        int j = i;
        bool first = true;
        while (!done[j]) {
            done[j] = 1;
            if (!first) out += ',';
            out += std::to_string(j);
            first = false;
            j = p[j];
        }
        out += ')';
    }
    if (out.empty()) out = "()";
    return out;
}

inline std::string perm_images(const Perm& p) {
    std::string out = "[";
    for (int i = 0; i < (int)p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p[i]);
    }
    return out + "]";
}

inline std::string int128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + (int)(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

// Stabilizer chain built with the classic deterministic Schreier-Sims
// procedure. Transversal element t maps base point to the orbit point.
class PermGroup {
public:
    int n = 0;
    std::vector<Perm> gens;

    PermGroup() = default;
    explicit PermGroup(int degree) : n(degree) { rebuild(); }
    PermGroup(int degree, std::vector<Perm> generators) : n(degree), gens(std::move(generators)) {
        for (auto& g : gens) {
            if ((int)g.size() != n) throw std::invalid_argument("generator degree mismatch");
            perm_validate(g);
        }
        rebuild();
    }

    const std::vector<int>& base_points() const { return base_; }

    unsigned __int128 order() const {
        unsigned __int128 o = 1;
        for (auto& t : transversal_) o *= (unsigned __int128)t.size();
        return o;
    }

    std::string order_str() const { return int128_to_string(order()); }

    bool contains(const Perm& p) const {
        Perm res;
        return sift(p, res) == (int)base_.size() && perm_is_identity(res);
    }

    // Orbit partition of [0,n) under the generators, blocks sorted by
    // smallest element.
    std::vector<std::vector<int>> orbits() const {
        std::vector<int> rep(n, -1);
        std::vector<std::vector<int>> out;
        for (int s = 0; s < n; ++s) {
            if (rep[s] >= 0) continue;
            std::vector<int> orb{s};
            rep[s] = s;
            for (size_t q = 0; q < orb.size(); ++q)
                for (auto& g : gens) {
                    int y = g[orb[q]];
                    if (rep[y] < 0) {
                        rep[y] = s;
                        orb.push_back(y);
                    }
                }
            std::sort(orb.begin(), orb.end());
            out.push_back(std::move(orb));
        }
        return out;
    }

    bool is_abelian() const {
        for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = i + 1; j < gens.size(); ++j)
                if (perm_mul(gens[i], gens[j]) != perm_mul(gens[j], gens[i])) return false;
        return true;
    }

    // Exhaustive element listing; guarded, intended for oracles and for
    // iterating small groups such as AAut candidates.
    std::vector<Perm> elements(size_t limit = 2000000) const {
        std::vector<Perm> elems{perm_identity(n)};
        std::set<Perm> seen(elems.begin(), elems.end());
        for (size_t q = 0; q < elems.size(); ++q)
            for (auto& g : gens) {
                Perm e = perm_mul(elems[q], g);
                if (seen.insert(e).second) {
                    if (elems.size() >= limit) throw std::runtime_error("group too large to enumerate");
                    elems.push_back(std::move(e));
                }
            }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

private:
    std::vector<int> base_;
    std::vector<std::map<int, Perm>> transversal_;  // per level: point -> rep
    std::vector<std::vector<Perm>> level_gens_;     // gens fixing base_[0..i-1]

    // Returns the level where p dropped out; res holds the residue.
    int sift(const Perm& p, Perm& res) const {
        res = p;
        for (size_t i = 0; i < base_.size(); ++i) {
            int x = res[base_[i]];
            auto it = transversal_[i].find(x);
            if (it == transversal_[i].end()) return (int)i;
            res = perm_mul(res, perm_inv(it->second));
        }
        return (int)base_.size();
    }

    void extend_base(const Perm& witness) {
        for (int i = 0; i < n; ++i)
            if (witness[i] != i) {
                base_.push_back(i);
                transversal_.push_back({{i, perm_identity(n)}});
                level_gens_.push_back({});
                return;
            }
        throw std::logic_error("identity residue cannot extend base");
    }

    void recompute_orbit(size_t level) {
        int b = base_[level];
        std::map<int, Perm> t{{b, perm_identity(n)}};
        std::vector<int> queue{b};
        for (size_t q = 0; q < queue.size(); ++q) {
            int x = queue[q];
            for (auto& g : level_gens_[level]) {
                int y = g[x];
                if (!t.count(y)) {
                    t.emplace(y, perm_mul(t[x], g));
                    queue.push_back(y);
                }
            }
        }
        transversal_[level] = std::move(t);
    }

    void add_generator_at(size_t level, const Perm& g) {
        for (size_t i = 0; i <= level && i < base_.size(); ++i)
            level_gens_[i].push_back(g);
        for (size_t i = 0; i <= level && i < base_.size(); ++i) recompute_orbit(i);
    }

    void rebuild() {
        base_.clear();
        transversal_.clear();
        level_gens_.clear();
        for (auto& g : gens) insert_element(g);
        bool stable = false;
        while (!stable) {
            stable = true;
            for (size_t i = 0; i < base_.size() && stable; ++i) {
                // Check Schreier generators at level i.
                for (auto& [x, tx] : transversal_[i]) {
                    for (auto& s : level_gens_[i]) {
                        Perm schreier = perm_mul(perm_mul(tx, s), perm_inv(transversal_[i].at(s[x])));
                        Perm res;
                        int lvl = sift(schreier, res);
                        if (!perm_is_identity(res)) {
                            if (lvl == (int)base_.size()) extend_base(res);
                            add_generator_at((size_t)lvl, res);
                            stable = false;
                            break;
                        }
                    }
                    if (!stable) break;
                }
            }
        }
    }

    void insert_element(const Perm& g) {
        Perm res;
        int lvl = sift(g, res);
        if (perm_is_identity(res)) return;
        if (lvl == (int)base_.size()) extend_base(res);
        add_generator_at((size_t)lvl, res);
    }
};

// Orbit of an object (canonically sorted set of point tuples) under the
// generators, plus the induced action on the orbit.  This is the COCO-style
// "ind" construction.
struct InducedAction {
    int source_degree = 0;
    std::vector<std::vector<std::vector<int>>> labeling;  // new point -> object
    PermGroup image;
};

inline std::vector<std::vector<int>> apply_object(const Perm& g, const std::vector<std::vector<int>>& obj) {
    std::vector<std::vector<int>> out;
    out.reserve(obj.size());
    for (auto& tup : obj) {
        std::vector<int> t;
        t.reserve(tup.size());
        for (int v : tup) t.push_back(g[v]);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline InducedAction induce(const PermGroup& g, std::vector<std::vector<std::vector<int>>> seeds) {
    InducedAction act;
    act.source_degree = g.n;
    std::map<std::vector<std::vector<int>>, int> index;
    for (auto& seed : seeds) {
        if (seed.empty()) throw std::invalid_argument("empty seed object");
        for (auto& tup : seed)
            for (int v : tup)
                if (v < 0 || v >= g.n) throw std::invalid_argument("seed point out of range");
        std::sort(seed.begin(), seed.end());
        seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
        if (index.count(seed)) continue;
        // BFS the orbit, then number its objects in canonical sorted order.
        std::set<std::vector<std::vector<int>>> orbit{seed};
        std::vector<std::vector<std::vector<int>>> queue{seed};
        for (size_t q = 0; q < queue.size(); ++q)
            for (auto& gen : g.gens) {
                auto img = apply_object(gen, queue[q]);
                if (orbit.insert(img).second) queue.push_back(img);
            }
        for (auto& obj : orbit) {
            index.emplace(obj, (int)act.labeling.size());
            act.labeling.push_back(obj);
        }
    }
    int m = (int)act.labeling.size();
    std::vector<Perm> igens;
    for (auto& gen : g.gens) {
        Perm img(m);
        for (int i = 0; i < m; ++i) {
            auto obj = apply_object(gen, act.labeling[i]);
            auto it = index.find(obj);
            if (it == index.end()) throw std::logic_error("generator leaves seed orbit closure");
            img[i] = it->second;
        }
        igens.push_back(std::move(img));
    }
    act.image = PermGroup(m, igens);
    return act;
}

}  // namespace jlab
