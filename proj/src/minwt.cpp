#include "pgc/minwt.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pgc/kernels.hpp"
#include "pgc/parallel.hpp"

namespace pgc {

namespace {

struct BasisInfo {
    GeometryDescriptor geometry;
    std::uint64_t p = 2;
    std::size_t m = 0;  // basis size
    std::size_t n = 0;  // code length
};

BasisInfo check_basis(const std::vector<Codeword>& basis) {
    if (basis.empty()) throw std::invalid_argument("kernel basis is empty");
    BasisInfo info;
    info.geometry = basis[0].geometry;
    info.p = info.geometry.p;
    info.m = basis.size();
    info.n = basis[0].values.size();
    for (const Codeword& c : basis) {
        if (!(c.geometry == info.geometry) || c.values.size() != info.n)
            throw std::invalid_argument("kernel basis rows disagree on geometry");
        if (kern::ops().count_nonzero(c.values.data(), info.n) == 0)
            throw std::invalid_argument("kernel basis contains a zero row");
    }
    if (info.p > 251) throw std::invalid_argument("characteristic too large for byte codewords");
    return info;
}

// reflected mixed-radix Gray sequence: one digit moves by +-1 per step
struct GrayStepper {
    std::uint64_t radix;
    std::vector<std::uint64_t> digit;
    std::vector<std::size_t> focus;
    std::vector<int> dir;

    GrayStepper(std::size_t m, std::uint64_t p) : radix(p), digit(m, 0), focus(m + 1), dir(m, 1) {
        for (std::size_t i = 0; i <= m; ++i) focus[i] = i;
    }

    // digit index and direction of the next step; false when exhausted
    bool next(std::size_t& j, int& d) {
        j = focus[0];
        focus[0] = 0;
        if (j == digit.size()) return false;
        d = dir[j];
        digit[j] = std::uint64_t(std::int64_t(digit[j]) + d);
        if (digit[j] == 0 || digit[j] == radix - 1) {
            dir[j] = -dir[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
        return true;
    }
};

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t clamp) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (v > clamp / base) return clamp + 1;
        v *= base;
    }
    return v;
}

// census of minimum-weight vectors seen by one worker
struct Census {
    std::uint64_t best = ~std::uint64_t(0);
    std::vector<std::vector<std::uint8_t>> words;

    void offer(std::uint64_t w, const std::uint8_t* vals, std::size_t n) {
        if (w == 0 || w > best) return;
        if (w < best) {
            best = w;
            words.clear();
        }
        words.emplace_back(vals, vals + n);
    }
};

}  // namespace

MinWeightResult exhaustive_min_weight(const std::vector<Codeword>& basis, std::uint64_t cap, unsigned jobs) {
    BasisInfo info = check_basis(basis);
    std::uint64_t total = checked_pow(info.p, info.m, cap);
    if (total > cap)
        throw std::invalid_argument("p^dim exceeds the enumeration cap; use brouwer_zimmermann instead");

    const bool binary = info.p == 2;
    const std::size_t n = info.n;
    const std::size_t words = kern::words_for(n);
    std::vector<std::vector<std::uint64_t>> packed_rows;
    if (binary)
        for (const Codeword& c : basis) packed_rows.push_back(kern::pack_bits(c.values.data(), n));

    // fix the top digits per work unit so every vector is visited once
    std::size_t prefix_len = 0;
    std::uint64_t prefix_count = 1;
    if (jobs > 1) {
        while (prefix_len < info.m && prefix_count < std::uint64_t(jobs)) {
            prefix_count *= info.p;
            ++prefix_len;
        }
    }
    std::size_t low_len = info.m - prefix_len;

    std::vector<Census> local(jobs > 1 ? jobs : 1);
    auto run_range = [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        Census& census = local[worker];
        std::vector<std::uint64_t> acc_bits(words, 0);
        std::vector<std::uint8_t> acc(n, 0);
        const auto& ops = kern::ops();
        for (std::uint64_t prefix = begin; prefix < end; ++prefix) {
            std::fill(acc_bits.begin(), acc_bits.end(), 0);
            std::fill(acc.begin(), acc.end(), 0);
            std::uint64_t digits = prefix;
            for (std::size_t i = 0; i < prefix_len; ++i) {
                std::uint64_t d = digits % info.p;
                digits /= info.p;
                const std::size_t row = low_len + i;
                if (d == 0) continue;
                if (binary)
                    ops.xor_words(acc_bits.data(), packed_rows[row].data(), words);
                else
                    ops.axpy_bytes_mod_p(acc.data(), std::uint8_t(d), basis[row].values.data(), n,
                                         std::uint8_t(info.p));
            }
            if (prefix != 0) {
                if (binary) {
                    std::uint64_t w = ops.popcount_words(acc_bits.data(), words);
                    if (w <= census.best) {
                        std::vector<std::uint8_t> tmp(n);
                        kern::unpack_bits(acc_bits.data(), n, tmp.data());
                        census.offer(w, tmp.data(), n);
                    }
                } else {
                    census.offer(ops.count_nonzero(acc.data(), n), acc.data(), n);
                }
            }
            GrayStepper gray(low_len, info.p);
            std::size_t j;
            int dir;
            while (gray.next(j, dir)) {
                if (binary) {
                    ops.xor_words(acc_bits.data(), packed_rows[j].data(), words);
                    std::uint64_t w = ops.popcount_words(acc_bits.data(), words);
                    if (w <= census.best) {
                        std::vector<std::uint8_t> tmp(n);
                        kern::unpack_bits(acc_bits.data(), n, tmp.data());
                        census.offer(w, tmp.data(), n);
                    }
                } else {
                    if (dir > 0)
                        ops.add_bytes_mod_p(acc.data(), basis[j].values.data(), n, std::uint8_t(info.p));
                    else
                        ops.sub_bytes_mod_p(acc.data(), basis[j].values.data(), n, std::uint8_t(info.p));
                    census.offer(ops.count_nonzero(acc.data(), n), acc.data(), n);
                }
            }
        }
    };

    if (jobs > 1)
        parallel_chunks(prefix_count, jobs, run_range);
    else
        run_range(0, 0, 1);

    Census merged;
    for (Census& c : local) {
        if (c.best < merged.best) {
            merged.best = c.best;
            merged.words.clear();
        }
        if (c.best == merged.best)
            for (auto& v : c.words) merged.words.push_back(std::move(v));
    }
    std::sort(merged.words.begin(), merged.words.end());

    MinWeightResult out;
    out.d = merged.best;
    out.method = MinWeightResult::Method::enumeration;
    out.exhaustive = true;
    out.witnesses.reserve(merged.words.size());
    for (auto& v : merged.words) out.witnesses.push_back(Codeword{info.geometry, std::move(v)});
    return out;
}

namespace {

struct Gamma {
    std::vector<std::uint8_t> rows;       // m x n
    std::vector<std::uint64_t> packed;    // m x words when p == 2
    std::size_t deficit = 0;
};

// RREF with a preferred column order; returns pivot columns in the order
// they were claimed
std::vector<std::size_t> rref_ordered(std::vector<std::uint8_t>& work, std::size_t m, std::size_t n,
                                      std::uint64_t p, const std::vector<std::size_t>& col_order,
                                      const std::vector<std::uint8_t>& inv) {
    const auto& ops = kern::ops();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c : col_order) {
        if (r == m) break;
        std::size_t pivot = r;
        while (pivot < m && work[pivot * n + c] == 0) ++pivot;
        if (pivot == m) continue;
        if (pivot != r)
            std::swap_ranges(work.begin() + std::ptrdiff_t(pivot * n),
                             work.begin() + std::ptrdiff_t((pivot + 1) * n),
                             work.begin() + std::ptrdiff_t(r * n));
        std::uint8_t* prow = work.data() + r * n;
        std::uint8_t scale = inv[prow[c]];
        if (scale != 1)
            for (std::size_t j = 0; j < n; ++j) prow[j] = std::uint8_t(prow[j] * scale % p);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            std::uint8_t factor = work[i * n + c];
            if (factor == 0) continue;
            ops.axpy_bytes_mod_p(work.data() + i * n, std::uint8_t(p - factor), prow, n, std::uint8_t(p));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::uint8_t> inv_table(std::uint64_t p) {
    std::vector<std::uint8_t> inv(p, 0);
    for (std::uint64_t a = 1; a < p; ++a) {
        std::uint64_t x = 1, base = a, k = p - 2;
        while (k != 0) {
            if (k & 1) x = x * base % p;
            base = base * base % p;
            k >>= 1;
        }
        inv[a] = std::uint8_t(x);
    }
    return inv;
}

struct BestWitness {
    std::uint64_t weight = ~std::uint64_t(0);
    std::vector<std::uint8_t> values;

    void offer(std::uint64_t w, const std::uint8_t* vals, std::size_t n) {
        if (w == 0 || w > weight) return;
        std::vector<std::uint8_t> v(vals, vals + n);
        if (w < weight || v < values) {
            weight = w;
            values = std::move(v);
        }
    }
};

// all nonzero-coefficient combinations of exactly `depth_left` rows with
// indices in [start, m)
void enumerate_messages(const Gamma& g, std::size_t m, std::size_t n, std::size_t words, std::uint64_t p,
                        bool binary, std::size_t start, std::size_t depth_left,
                        std::vector<std::uint8_t>& acc, std::vector<std::uint64_t>& acc_bits,
                        std::vector<std::uint8_t>& scratch, BestWitness& best) {
    const auto& ops = kern::ops();
    for (std::size_t i = start; i + depth_left <= m; ++i) {
        if (binary) {
            ops.xor_words(acc_bits.data(), g.packed.data() + i * words, words);
            if (depth_left == 1) {
                std::uint64_t w = ops.popcount_words(acc_bits.data(), words);
                if (w <= best.weight) {
                    kern::unpack_bits(acc_bits.data(), n, scratch.data());
                    best.offer(w, scratch.data(), n);
                }
            } else {
                enumerate_messages(g, m, n, words, p, binary, i + 1, depth_left - 1, acc, acc_bits, scratch,
                                   best);
            }
            ops.xor_words(acc_bits.data(), g.packed.data() + i * words, words);
        } else {
            for (std::uint64_t c = 1; c < p; ++c) {
                ops.add_bytes_mod_p(acc.data(), g.rows.data() + i * n, n, std::uint8_t(p));
                if (depth_left == 1) {
                    best.offer(ops.count_nonzero(acc.data(), n), acc.data(), n);
                } else {
                    enumerate_messages(g, m, n, words, p, binary, i + 1, depth_left - 1, acc, acc_bits,
                                       scratch, best);
                }
            }
            // c ran up to p-1 accumulated additions; one more returns to zero
            ops.add_bytes_mod_p(acc.data(), g.rows.data() + i * n, n, std::uint8_t(p));
        }
    }
}

}  // namespace

MinWeightResult brouwer_zimmermann(const std::vector<Codeword>& basis,
                                   const std::optional<Codeword>& upper_seed, unsigned jobs) {
    BasisInfo info = check_basis(basis);
    const std::size_t m = info.m, n = info.n;
    const std::uint64_t p = info.p;
    const bool binary = p == 2;
    const std::size_t words = kern::words_for(n);
    auto inv = inv_table(p);

    std::vector<std::uint8_t> gen;
    gen.reserve(m * n);
    for (const Codeword& c : basis) gen.insert(gen.end(), c.values.begin(), c.values.end());

    // systematic generators over disjoint information sets
    std::vector<Gamma> gammas;
    std::vector<bool> used(n, false);
    while (true) {
        std::vector<std::size_t> order;
        order.reserve(n);
        for (std::size_t c = 0; c < n; ++c)
            if (!used[c]) order.push_back(c);
        std::size_t fresh = order.size();
        for (std::size_t c = 0; c < n; ++c)
            if (used[c]) order.push_back(c);

        std::vector<std::uint8_t> work(gen);
        auto pivots = rref_ordered(work, m, n, p, order, inv);
        std::size_t fresh_rank = 0;
        for (std::size_t c : pivots) {
            bool is_fresh = false;
            for (std::size_t i = 0; i < fresh && !is_fresh; ++i) is_fresh = order[i] == c;
            if (is_fresh) {
                used[c] = true;
                ++fresh_rank;
            }
        }
        if (fresh_rank == 0) break;
        Gamma g;
        g.rows = std::move(work);
        g.deficit = m - fresh_rank;
        if (binary) {
            g.packed.assign(m * words, 0);
            for (std::size_t i = 0; i < m; ++i) {
                auto row = kern::pack_bits(g.rows.data() + i * n, n);
                std::copy(row.begin(), row.end(), g.packed.begin() + std::ptrdiff_t(i * words));
            }
        }
        gammas.push_back(std::move(g));
    }
    if (gammas.empty()) throw std::invalid_argument("kernel basis has rank zero");

    BestWitness best;
    for (const Codeword& c : basis)
        best.offer(kern::ops().count_nonzero(c.values.data(), n), c.values.data(), n);

    if (upper_seed.has_value()) {
        const Codeword& seed = *upper_seed;
        if (!(seed.geometry == info.geometry) || seed.values.size() != n)
            throw std::invalid_argument("seed codeword geometry mismatch");
        // membership: reduce against the first systematic generator
        std::vector<std::uint8_t> residue(seed.values);
        std::vector<std::uint8_t> work(gen);
        std::vector<std::size_t> natural(n);
        for (std::size_t c = 0; c < n; ++c) natural[c] = c;
        auto pivots = rref_ordered(work, m, n, p, natural, inv);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            std::uint8_t coeff = residue[pivots[i]];
            if (coeff != 0)
                kern::ops().axpy_bytes_mod_p(residue.data(), std::uint8_t(p - coeff), work.data() + i * n,
                                             n, std::uint8_t(p));
        }
        if (kern::ops().count_nonzero(residue.data(), n) != 0)
            throw std::invalid_argument("seed codeword is not in the code");
        best.offer(kern::ops().count_nonzero(seed.values.data(), n), seed.values.data(), n);
    }

    for (std::size_t r = 1; r <= m; ++r) {
        for (const Gamma& g : gammas) {
            std::vector<BestWitness> local(jobs > 1 ? jobs : 1);
            parallel_chunks(m, jobs <= 1 ? 1 : jobs, [&](unsigned worker, std::uint64_t begin,
                                                         std::uint64_t end) {
                BestWitness& mine = local[worker];
                std::vector<std::uint8_t> acc(binary ? 0 : n, 0);
                std::vector<std::uint64_t> acc_bits(binary ? words : 0, 0);
                std::vector<std::uint8_t> scratch(n, 0);
                const auto& ops = kern::ops();
                for (std::uint64_t first = begin; first < end; ++first) {
                    if (first + r > m) break;
                    if (binary) {
                        ops.xor_words(acc_bits.data(), g.packed.data() + first * words, words);
                        if (r == 1) {
                            std::uint64_t w = ops.popcount_words(acc_bits.data(), words);
                            if (w <= mine.weight) {
                                kern::unpack_bits(acc_bits.data(), n, scratch.data());
                                mine.offer(w, scratch.data(), n);
                            }
                        } else {
                            enumerate_messages(g, m, n, words, p, binary, first + 1, r - 1, acc, acc_bits,
                                               scratch, mine);
                        }
                        ops.xor_words(acc_bits.data(), g.packed.data() + first * words, words);
                    } else {
                        for (std::uint64_t c = 1; c < p; ++c) {
                            ops.add_bytes_mod_p(acc.data(), g.rows.data() + first * n, n, std::uint8_t(p));
                            if (r == 1) {
                                mine.offer(ops.count_nonzero(acc.data(), n), acc.data(), n);
                            } else {
                                enumerate_messages(g, m, n, words, p, binary, first + 1, r - 1, acc,
                                                   acc_bits, scratch, mine);
                            }
                        }
                        ops.add_bytes_mod_p(acc.data(), g.rows.data() + first * n, n, std::uint8_t(p));
                    }
                }
            });
            for (const BestWitness& mine : local)
                if (!mine.values.empty()) best.offer(mine.weight, mine.values.data(), n);
        }
        std::uint64_t lower = 0;
        for (const Gamma& g : gammas) {
            std::uint64_t term = r + 1 > g.deficit ? r + 1 - g.deficit : 0;
            lower += term;
        }
        if (lower >= best.weight) break;
    }

    MinWeightResult out;
    out.d = best.weight;
    out.method = MinWeightResult::Method::brouwer_zimmermann;
    out.exhaustive = false;
    out.witnesses.push_back(Codeword{info.geometry, std::move(best.values)});
    return out;
}

D2Table D2Table::builtin() {
    D2Table t;
    t.sporadic = {{9, 15}, {25, 45}};
    return t;
}

D2Table D2Table::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open d2 table: " + path);
    nlohmann::json j;
    in >> j;
    D2Table t = builtin();
    for (auto it = j.begin(); it != j.end(); ++it)
        t.sporadic[std::stoull(it.key())] = it.value().get<std::uint64_t>();
    return t;
}

std::optional<std::uint64_t> known_d2(std::uint64_t q, const D2Table& table) {
    std::uint64_t p = 0, e = 0;
    factor_prime_power(q, p, e);
    if (p == 2) return q + 2;
    if (e == 1) return 2 * q;
    auto it = table.sporadic.find(q);
    if (it != table.sporadic.end()) return it->second;
    return std::nullopt;
}

BoundsReport bounds(std::uint64_t n, std::uint64_t q, std::uint64_t k, const D2Table& table) {
    if (n < 2) throw std::invalid_argument("bounds need n >= 2");
    if (k < 1 || k > n - 1) throw std::invalid_argument("bounds need 1 <= k <= n-1");
    std::uint64_t p = 0, e = 0;
    factor_prime_power(q, p, e);

    BoundsReport rep;
    rep.n = n;
    rep.q = q;
    rep.k = k;
    std::uint64_t np = n - k + 1;  // reduced dimension, k' = 1
    rep.reduced_params = {1, np};

    std::uint64_t theta_prime = theta(int(np) - 1, q);
    // 2 (theta' (1 - 1/p) + 1/p), exact rational then ceiling
    std::uint64_t num = 2 * (theta_prime * (p - 1) + 1);
    rep.bagchi_inamdar = (num + p - 1) / p;

    std::uint64_t q_pow = 1;
    for (std::uint64_t i = 0; i + 2 < np; ++i) q_pow *= q;  // q^{np-2}

    if (p != 2 && np > 2) rep.csajbok = 2 * (q - q / p + 1) * q_pow;
    if (p == 2) rep.ckdr = q_pow * (q + 2);
    rep.upper_lsv = (2 * q - (q - p) / (p - 1)) * q_pow;
    rep.d2_known = known_d2(q, table);
    if (rep.d2_known.has_value()) rep.main_wt = q_pow * *rep.d2_known;
    if (e == 2 && p >= 7) rep.p_square_lower = (2 * p * p - 2 * p + 5) * q_pow;
    return rep;
}

HaemersCheck haemers_feasible(std::uint64_t s, std::uint64_t t, std::uint64_t n, std::uint64_t q) {
    std::uint64_t theta_n = theta(int(n), q);
    std::uint64_t theta_prev = theta(int(n) - 1, q);
    if (s > theta_n || t > theta_n) throw std::invalid_argument("set sizes exceed the point count");
    unsigned __int128 lhs = (unsigned __int128)(theta_prev)*theta_prev * s * t;
    unsigned __int128 qpow = 1;
    for (std::uint64_t i = 0; i + 1 < n; ++i) qpow *= q;
    unsigned __int128 rhs = qpow * (theta_n - s) * (theta_n - t);
    HaemersCheck out;
    if (lhs > ~std::uint64_t(0) || rhs > ~std::uint64_t(0))
        throw std::overflow_error("haemers bound overflows 64 bits");
    out.lhs = std::uint64_t(lhs);
    out.rhs = std::uint64_t(rhs);
    out.feasible = out.lhs <= out.rhs;
    return out;
}

}  // namespace pgc
