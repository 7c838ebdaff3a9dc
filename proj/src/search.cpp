#include "fibrecount/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <thread>

#include "fibrecount/errors.hpp"
#include "fibrecount/intmath.hpp"

namespace fibrecount {

namespace {

using detail::i128;
using detail::SplitMix64;
using detail::split_stream;

constexpr uint64_t kExhaustiveChunk = 65536;
constexpr uint64_t kRandomChunk = 4096;
constexpr uint64_t kClimbChunk = 65536;
constexpr uint64_t kSpotCheckStride = 1024;

// One adjustable coefficient slot of the candidate tuple.
struct Position {
    int cover = 0;
    int index = 0;       // coefficient index within the cover
    uint64_t domain = 0; // number of admissible values
    bool is_lc = false;
};

// The candidate space: which coefficient slots vary, their domains, and the
// mixed-radix correspondence between candidate indices, per-slot ordinals,
// and field elements.  Candidate order is lexicographic on the coefficient
// tuple (f_1 constant term most significant).
class Space {
  public:
    explicit Space(const SearchConfig& cfg)
        : field_(cfg.field), degrees_(cfg.degrees), lc_mode_(cfg.lc_mode) {
        k_ = int(degrees_.size());
        q_ = field_->q();
        p_ = field_->p();
        n_ = field_->n();

        if (lc_mode_ == LcMode::SquareClasses) {
            const auto& tab = field_->char_table();
            for (uint64_t i = 1; i < uint64_t(q_); ++i) {
                if (tab[i] == -1) {
                    nonsquare_ = i;
                    break;
                }
            }
        }

        if (cfg.normalize && degrees_[0] % p_ != 0) {
            pin_cover_ = 0;
            pin_index_ = degrees_[0] - 1;
        }

        for (int i = 0; i < k_; ++i) {
            for (int c = 0; c <= degrees_[size_t(i)]; ++c) {
                if (i == pin_cover_ && c == pin_index_) continue;
                Position pos;
                pos.cover = i;
                pos.index = c;
                pos.is_lc = c == degrees_[size_t(i)];
                if (pos.is_lc) {
                    if (lc_mode_ == LcMode::Monic) continue; // fixed to 1
                    pos.domain = lc_mode_ == LcMode::SquareClasses ? 2 : uint64_t(q_ - 1);
                } else {
                    pos.domain = uint64_t(q_);
                }
                positions_.push_back(pos);
            }
        }

        unsigned __int128 total = 1;
        for (const Position& pos : positions_) {
            total *= pos.domain;
            if (total > (unsigned __int128)(UINT64_MAX)) {
                overflow_ = true;
                total = UINT64_MAX;
            }
        }
        total_ = uint64_t(total);
    }

    const FieldRef& field() const { return field_; }
    int k() const { return k_; }
    uint64_t total() const { return total_; }
    bool overflow() const { return overflow_; }
    size_t num_positions() const { return positions_.size(); }
    const std::vector<Position>& positions() const { return positions_; }

    // Buffers shaped for fill(): one flat coordinate array per cover.
    std::vector<std::vector<int64_t>> make_buffers() const {
        std::vector<std::vector<int64_t>> out;
        out.reserve(size_t(k_));
        for (int i = 0; i < k_; ++i) {
            out.emplace_back(size_t(degrees_[size_t(i)] + 1) * size_t(n_), 0);
        }
        return out;
    }

    void ordinals_from_index(uint64_t idx, uint64_t* ordinals) const {
        for (size_t j = positions_.size(); j-- > 0;) {
            ordinals[j] = idx % positions_[j].domain;
            idx /= positions_[j].domain;
        }
    }

    void draw(SplitMix64& rng, uint64_t* ordinals) const {
        for (size_t j = 0; j < positions_.size(); ++j) ordinals[j] = rng.below(positions_[j].domain);
    }

    uint64_t element_index(const Position& pos, uint64_t ordinal) const {
        if (!pos.is_lc) return ordinal;
        if (lc_mode_ == LcMode::SquareClasses) return ordinal == 0 ? 1 : nonsquare_;
        return ordinal + 1; // All: any nonzero element
    }

    // Write the candidate's coefficient coordinates into the buffers.
    void fill(const uint64_t* ordinals, std::vector<std::vector<int64_t>>& coeffs) const {
        for (int i = 0; i < k_; ++i) std::fill(coeffs[size_t(i)].begin(), coeffs[size_t(i)].end(), 0);
        if (lc_mode_ == LcMode::Monic) {
            for (int i = 0; i < k_; ++i) coeffs[size_t(i)][size_t(degrees_[size_t(i)]) * size_t(n_)] = 1;
        }
        for (size_t j = 0; j < positions_.size(); ++j) {
            const Position& pos = positions_[j];
            uint64_t e = element_index(pos, ordinals[j]);
            int64_t* slot = coeffs[size_t(pos.cover)].data() + size_t(pos.index) * size_t(n_);
            for (int d = 0; d < n_; ++d) {
                slot[d] = int64_t(e % uint64_t(p_));
                e /= uint64_t(p_);
            }
        }
    }

    std::vector<uint64_t> key_from_ordinals(const uint64_t* ordinals) const {
        std::vector<uint64_t> key(positions_.size());
        for (size_t j = 0; j < positions_.size(); ++j) key[j] = element_index(positions_[j], ordinals[j]);
        return key;
    }

    std::vector<Poly> polys_from_ordinals(const uint64_t* ordinals,
                                          std::vector<std::vector<int64_t>>& coeffs) const {
        fill(ordinals, coeffs);
        std::vector<Poly> out;
        out.reserve(size_t(k_));
        for (int i = 0; i < k_; ++i) {
            std::vector<FieldElement> c;
            c.reserve(size_t(degrees_[size_t(i)] + 1));
            for (int j = 0; j <= degrees_[size_t(i)]; ++j) {
                auto begin = coeffs[size_t(i)].begin() + int64_t(j) * n_;
                c.push_back(field_->from_coords(std::vector<int64_t>(begin, begin + n_)));
            }
            out.emplace_back(field_, std::move(c));
        }
        return out;
    }

  private:
    FieldRef field_;
    std::vector<int> degrees_;
    LcMode lc_mode_;
    int k_ = 0, n_ = 1;
    int64_t q_ = 0, p_ = 0;
    uint64_t nonsquare_ = 0;
    int pin_cover_ = -1, pin_index_ = -1;
    std::vector<Position> positions_;
    uint64_t total_ = 0;
    bool overflow_ = false;
};

// Scoring workspace: separability gate, character rows, subset sign DP.
// No allocation per candidate on prime fields.
class Scorer {
  public:
    Scorer(FieldRef field, std::vector<int> degrees)
        : field_(std::move(field)), degrees_(std::move(degrees)) {
        k_ = int(degrees_.size());
        q_ = field_->q();
        p_ = field_->p();
        n_ = field_->n();
        tab_ = field_->char_table().data();
        rows_.resize(size_t(k_));
        for (auto& r : rows_) r.resize(size_t(q_));
        uint32_t full = (uint32_t(1) << k_) - 1;
        sums_.resize(size_t(full) + 1);
        sign_.assign(size_t(full) + 1, 1);
        chi_mask_.assign(size_t(full) + 1, 1);
        d_mask_.assign(size_t(full) + 1, 0);
        for (uint32_t mask = 1; mask <= full; ++mask) {
            for (int i = 0; i < k_; ++i) {
                if (mask & (uint32_t(1) << i)) d_mask_[mask] += degrees_[size_t(i)];
            }
        }
        int total_deg = d_mask_[full];
        prod_.reserve(size_t(total_deg) + 1);
        tmp_.reserve(size_t(total_deg) + 1);
        deriv_.reserve(size_t(total_deg));
        rem_.reserve(size_t(total_deg) + 1);
    }

    // N for the candidate, or nothing when the product is inseparable.
    std::optional<int64_t> score(const std::vector<std::vector<int64_t>>& coeffs) {
        if (!separable(coeffs)) return std::nullopt;

        for (int i = 0; i < k_; ++i) {
            field_->chi_row(coeffs[size_t(i)].data(), degrees_[size_t(i)] + 1, rows_[size_t(i)].data());
        }
        const uint32_t full = (uint32_t(1) << k_) - 1;
        std::fill(sums_.begin(), sums_.end(), int64_t(0));
        for (int64_t x = 0; x < q_; ++x) {
            for (uint32_t mask = 1; mask <= full; ++mask) {
                uint32_t low = mask & (~mask + 1);
                sign_[mask] = int8_t(sign_[mask ^ low] * rows_[size_t(std::countr_zero(low))][size_t(x)]);
                sums_[mask] += sign_[mask];
            }
        }

        // chi of each leading coefficient, combined per subset.
        for (int i = 0; i < k_; ++i) {
            const int64_t* lc = coeffs[size_t(i)].data() + size_t(degrees_[size_t(i)]) * size_t(n_);
            chi_lc_[size_t(i)] = tab_[field_->raw_index(lc)];
        }
        for (uint32_t mask = 1; mask <= full; ++mask) {
            uint32_t low = mask & (~mask + 1);
            chi_mask_[mask] = int8_t(chi_mask_[mask ^ low] * chi_lc_[size_t(std::countr_zero(low))]);
        }

        int64_t trace_sum = 0;
        for (uint32_t mask = 1; mask <= full; ++mask) {
            int inf = d_mask_[mask] % 2 == 1 ? 1 : (chi_mask_[mask] == 1 ? 2 : 0);
            trace_sum += 1 - sums_[mask] - inf;
        }
        return q_ + 1 - trace_sum;
    }

  private:
    bool separable(const std::vector<std::vector<int64_t>>& coeffs) {
        if (n_ > 1) {
            // Extension fields take the generic path; the hot loop targets
            // prime fields.
            std::vector<Poly> polys;
            polys.reserve(size_t(k_));
            for (int i = 0; i < k_; ++i) {
                std::vector<FieldElement> c;
                for (int j = 0; j <= degrees_[size_t(i)]; ++j) {
                    auto begin = coeffs[size_t(i)].begin() + int64_t(j) * n_;
                    c.push_back(field_->from_coords(std::vector<int64_t>(begin, begin + n_)));
                }
                polys.emplace_back(field_, std::move(c));
            }
            Poly prod = polys[0];
            for (int i = 1; i < k_; ++i) prod = prod * polys[size_t(i)];
            return prod.is_separable();
        }

        const bool small = p_ < (int64_t(1) << 31);
        prod_.assign(1, 1);
        for (int i = 0; i < k_; ++i) {
            const auto& c = coeffs[size_t(i)];
            int d = degrees_[size_t(i)];
            tmp_.assign(prod_.size() + size_t(d), 0);
            for (size_t a = 0; a < prod_.size(); ++a) {
                if (prod_[a] == 0) continue;
                for (int b = 0; b <= d; ++b) {
                    int64_t t = small ? (prod_[a] * c[size_t(b)]) % p_
                                      : int64_t(detail::mulmod_u64(uint64_t(prod_[a]), uint64_t(c[size_t(b)]),
                                                                   uint64_t(p_)));
                    tmp_[a + size_t(b)] = (tmp_[a + size_t(b)] + t) % p_;
                }
            }
            prod_.swap(tmp_);
        }

        deriv_.clear();
        for (size_t i = 1; i < prod_.size(); ++i) {
            int64_t m = int64_t(i) % p_;
            int64_t t = small ? (m * prod_[i]) % p_
                              : int64_t(detail::mulmod_u64(uint64_t(m), uint64_t(prod_[i]), uint64_t(p_)));
            deriv_.push_back(t);
        }
        while (!deriv_.empty() && deriv_.back() == 0) deriv_.pop_back();
        if (deriv_.empty()) return false; // product degree >= 1 with zero derivative

        // gcd degree via the Euclidean remainder chain
        rem_ = prod_;
        std::vector<int64_t>* a = &rem_;
        std::vector<int64_t>* b = &deriv_;
        while (!b->empty()) {
            int64_t inv = detail::mod_inverse_i64(b->back(), p_);
            while (a->size() >= b->size()) {
                int64_t lead = a->back();
                if (lead != 0) {
                    int64_t f = small ? (lead * inv) % p_
                                      : int64_t(detail::mulmod_u64(uint64_t(lead), uint64_t(inv), uint64_t(p_)));
                    size_t shift = a->size() - b->size();
                    for (size_t j = 0; j < b->size(); ++j) {
                        int64_t t = small ? (f * (*b)[j]) % p_
                                          : int64_t(detail::mulmod_u64(uint64_t(f), uint64_t((*b)[j]),
                                                                       uint64_t(p_)));
                        (*a)[shift + j] = ((*a)[shift + j] - t + p_) % p_;
                    }
                }
                a->pop_back();
                while (!a->empty() && a->back() == 0) a->pop_back();
                if (a->empty()) break;
            }
            std::swap(a, b);
        }
        return a->size() == 1;
    }

    FieldRef field_;
    std::vector<int> degrees_;
    int k_ = 0, n_ = 1;
    int64_t q_ = 0, p_ = 0;
    const int8_t* tab_ = nullptr;
    std::vector<std::vector<int8_t>> rows_;
    std::vector<int64_t> sums_;
    std::vector<int8_t> sign_;
    std::vector<int8_t> chi_mask_;
    std::vector<int> d_mask_;
    int8_t chi_lc_[32] = {};
    std::vector<int64_t> prod_, tmp_, deriv_, rem_;
};

struct BoardEntry {
    int64_t n = 0;
    std::vector<uint64_t> ordinals;
    std::vector<uint64_t> key; // element indices, the published tie-break
};

bool better(const BoardEntry& a, const BoardEntry& b) {
    if (a.n != b.n) return a.n > b.n;
    return a.key < b.key;
}

void board_insert(std::vector<BoardEntry>& board, size_t cap, BoardEntry entry) {
    for (const BoardEntry& e : board) {
        if (e.key == entry.key) return;
    }
    auto it = std::lower_bound(board.begin(), board.end(), entry, better);
    board.insert(it, std::move(entry));
    if (board.size() > cap) board.pop_back();
}

struct ChunkOut {
    std::vector<BoardEntry> board;
    uint64_t evaluated = 0, valid = 0, skipped = 0, restarts = 0;
};

void validate_config(const SearchConfig& cfg) {
    if (!cfg.field) throw validation_error("search config has no field");
    if (cfg.degrees.empty()) throw validation_error("search config has no degrees");
    for (int d : cfg.degrees) {
        if (d < 1) throw validation_error("search degrees must be >= 1");
    }
    if (cfg.degrees.size() > 16) throw validation_error("search supports at most 16 covers");
    if (cfg.budget < 1) throw validation_error("search budget must be >= 1");
    if (cfg.top < 1) throw validation_error("leaderboard size must be >= 1");
    if (cfg.threads < 1) throw validation_error("thread count must be >= 1");
    if (cfg.patience < 1) throw validation_error("patience must be >= 1");
    if (cfg.field->q() > FieldSpec::kTableLimit) {
        throw validation_error("search needs q within the character-table limit");
    }
}

// Shared per-worker state for all three strategies.
struct Runner {
    const SearchConfig& cfg;
    const Space& space;
    int genus;
    int64_t hws;

    ChunkOut run_chunk(uint64_t chunk, uint64_t limit) const {
        ChunkOut out;
        Scorer scorer(cfg.field, cfg.degrees);
        auto coeffs = space.make_buffers();
        std::vector<uint64_t> ordinals(space.num_positions());
        auto spot_coeffs = space.make_buffers();

        auto consider = [&](uint64_t global_index) {
            ++out.evaluated;
            std::optional<int64_t> n = scorer.score(coeffs);
            if (!n) {
                ++out.skipped;
                return std::optional<int64_t>();
            }
            ++out.valid;
            if (*n > hws) {
                throw internal_error("search produced N = " + std::to_string(*n) +
                                     " above the Weil-Serre bound " + std::to_string(hws));
            }
            if (global_index % kSpotCheckStride == 0) {
                CurveSystem sys(cfg.field, space.polys_from_ordinals(ordinals.data(), spot_coeffs));
                int64_t expect = point_count(sys).n;
                if (expect != *n) {
                    throw internal_error("fast scorer disagrees with point_count: " +
                                         std::to_string(*n) + " vs " + std::to_string(expect));
                }
            }
            BoardEntry e;
            e.n = *n;
            e.ordinals.assign(ordinals.begin(), ordinals.end());
            e.key = space.key_from_ordinals(ordinals.data());
            board_insert(out.board, size_t(cfg.top), std::move(e));
            return n;
        };

        switch (cfg.strategy) {
        case Strategy::Exhaustive: {
            uint64_t begin = chunk * kExhaustiveChunk;
            uint64_t end = std::min(limit, begin + kExhaustiveChunk);
            for (uint64_t idx = begin; idx < end; ++idx) {
                space.ordinals_from_index(idx, ordinals.data());
                space.fill(ordinals.data(), coeffs);
                consider(idx);
            }
            break;
        }
        case Strategy::Random: {
            SplitMix64 rng = split_stream(cfg.seed, chunk);
            uint64_t begin = chunk * kRandomChunk;
            uint64_t end = std::min(limit, begin + kRandomChunk);
            for (uint64_t i = begin; i < end; ++i) {
                space.draw(rng, ordinals.data());
                space.fill(ordinals.data(), coeffs);
                consider(i);
            }
            break;
        }
        case Strategy::HillClimb: {
            SplitMix64 rng = split_stream(cfg.seed, chunk);
            uint64_t begin = chunk * kClimbChunk;
            uint64_t end = std::min(limit, begin + kClimbChunk);
            uint64_t step = begin;

            std::vector<size_t> mutable_pos;
            for (size_t j = 0; j < space.num_positions(); ++j) {
                if (space.positions()[j].domain > 1) mutable_pos.push_back(j);
            }

            int64_t current = 0;
            bool have_current = false;
            int rejections = 0;
            auto restart = [&]() {
                have_current = false;
                rejections = 0;
                while (step < end && !have_current) {
                    space.draw(rng, ordinals.data());
                    space.fill(ordinals.data(), coeffs);
                    if (std::optional<int64_t> n = consider(step++)) {
                        current = *n;
                        have_current = true;
                    }
                }
            };
            restart();
            if (mutable_pos.empty()) break; // single-candidate space
            while (step < end && have_current) {
                size_t j = mutable_pos[size_t(rng.below(mutable_pos.size()))];
                uint64_t old = ordinals[j];
                uint64_t domain = space.positions()[j].domain;
                uint64_t next = rng.below(domain - 1);
                if (next >= old) ++next;
                ordinals[j] = next;
                space.fill(ordinals.data(), coeffs);
                std::optional<int64_t> n = consider(step++);
                if (n && *n >= current) {
                    current = *n;
                    rejections = 0;
                } else {
                    ordinals[j] = old;
                    if (++rejections >= cfg.patience) {
                        ++out.restarts;
                        restart();
                    }
                }
            }
            break;
        }
        }
        return out;
    }
};

} // namespace

Strategy parse_strategy(const std::string& name) {
    if (name == "exhaustive") return Strategy::Exhaustive;
    if (name == "random") return Strategy::Random;
    if (name == "hill-climb") return Strategy::HillClimb;
    throw parse_error("unknown strategy '" + name + "' (expected exhaustive, random, or hill-climb)");
}

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Exhaustive: return "exhaustive";
    case Strategy::Random: return "random";
    case Strategy::HillClimb: return "hill-climb";
    }
    return "?";
}

CharCache build_char_cache(const CurveSystem& sys) {
    const FieldRef& field = sys.field();
    if (field->q() > FieldSpec::kTableLimit) {
        throw validation_error("character cache needs q within the table limit");
    }
    CharCache cache;
    cache.rows.resize(sys.polys().size());
    for (size_t i = 0; i < sys.polys().size(); ++i) {
        cache.rows[i].resize(size_t(field->q()));
        std::vector<int64_t> flat = sys.polys()[i].flat_coords();
        field->chi_row(flat.data(), int(flat.size()) / field->n(), cache.rows[i].data());
    }
    return cache;
}

std::pair<int64_t, int> evaluate_candidate(const CurveSystem& sys, const CharCache& cache) {
    const FieldRef& field = sys.field();
    const int k = sys.k();
    const int64_t q = field->q();
    if (cache.rows.size() != size_t(k)) {
        throw validation_error("character cache does not match the system");
    }
    const uint32_t full = (uint32_t(1) << k) - 1;

    std::vector<int64_t> sums(size_t(full) + 1, 0);
    std::vector<int8_t> sign(size_t(full) + 1, 1);
    for (int64_t x = 0; x < q; ++x) {
        for (uint32_t mask = 1; mask <= full; ++mask) {
            uint32_t low = mask & (~mask + 1);
            sign[mask] = int8_t(sign[mask ^ low] * cache.rows[size_t(std::countr_zero(low))][size_t(x)]);
            sums[mask] += sign[mask];
        }
    }

    std::vector<int> chi_lc(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) chi_lc[size_t(i)] = field->quad_char(sys.polys()[size_t(i)].leading_coeff());

    int64_t trace_sum = 0;
    for (uint32_t mask = 1; mask <= full; ++mask) {
        int d = 0, chi = 1;
        for (int i = 0; i < k; ++i) {
            if (mask & (uint32_t(1) << i)) {
                d += sys.degrees()[size_t(i)];
                chi *= chi_lc[size_t(i)];
            }
        }
        int inf = d % 2 == 1 ? 1 : (chi == 1 ? 2 : 0);
        trace_sum += 1 - sums[mask] - inf;
    }
    return {q + 1 - trace_sum, genus_fibre(sys.degrees()).first};
}

SearchResult run_search(const SearchConfig& cfg) {
    validate_config(cfg);
    Space space(cfg);

    auto [genus, delta] = genus_fibre(cfg.degrees);
    (void)delta;
    int64_t hws = hws_bound(cfg.field->q(), genus);

    uint64_t limit = cfg.budget;
    uint64_t chunk_size = kRandomChunk;
    if (cfg.strategy == Strategy::Exhaustive) {
        if (space.overflow() || space.total() > cfg.exhaustive_cap) {
            throw validation_error("exhaustive candidate space exceeds the cap of " +
                                   std::to_string(cfg.exhaustive_cap));
        }
        limit = std::min(cfg.budget, space.total());
        chunk_size = kExhaustiveChunk;
    } else if (cfg.strategy == Strategy::HillClimb) {
        chunk_size = kClimbChunk;
    }
    uint64_t num_chunks = (limit + chunk_size - 1) / chunk_size;

    Runner runner{cfg, space, genus, hws};
    std::vector<ChunkOut> outs(static_cast<size_t>(num_chunks));

    auto t0 = std::chrono::steady_clock::now();
    int workers = int(std::min<uint64_t>(uint64_t(cfg.threads), num_chunks));
    if (workers <= 1) {
        for (uint64_t j = 0; j < num_chunks; ++j) outs[size_t(j)] = runner.run_chunk(j, limit);
    } else {
        std::atomic<uint64_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mu;
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (;;) {
                        uint64_t j = next.fetch_add(1);
                        if (j >= num_chunks) break;
                        outs[size_t(j)] = runner.run_chunk(j, limit);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    auto t1 = std::chrono::steady_clock::now();

    SearchResult result;
    std::vector<BoardEntry> board;
    for (ChunkOut& out : outs) {
        result.stats.evaluated += out.evaluated;
        result.stats.valid += out.valid;
        result.stats.skipped += out.skipped;
        result.stats.restarts += out.restarts;
        for (BoardEntry& e : out.board) board_insert(board, size_t(cfg.top), std::move(e));
    }
    result.stats.space = space.overflow() ? 0 : space.total();
    result.stats.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (result.stats.wall_seconds > 0) {
        result.stats.throughput = double(result.stats.evaluated) / result.stats.wall_seconds;
    }

    if (result.stats.valid == 0) {
        throw validation_error("no valid candidate (separable product) in the searched space");
    }

    auto coeffs = space.make_buffers();
    for (const BoardEntry& e : board) {
        RecordEntry entry;
        entry.field = cfg.field->to_string();
        entry.q = cfg.field->q();
        entry.g = genus;
        entry.n = e.n;
        entry.hws = hws;
        for (const Poly& f : space.polys_from_ordinals(e.ordinals.data(), coeffs)) {
            entry.polys.push_back(f.to_string());
        }
        entry.key = e.key;
        result.leaderboard.push_back(std::move(entry));
    }
    return result;
}

void annotate_records(std::vector<RecordEntry>& entries, const RecordsTable& table) {
    for (RecordEntry& e : entries) {
        const RecordsRow* row = table.find(e.q, e.g);
        if (!row) continue;
        e.known_lower = row->lower;
        e.known_upper = row->upper;
        if (row->lower) {
            e.improved = e.n > *row->lower;
        } else {
            // No established entry: the record tables list one only when the
            // count clears upper/sqrt(2).
            e.improved = i128(2) * e.n * e.n > i128(row->upper) * row->upper;
        }
        e.exceeds_known_upper = e.n > row->upper;
    }
}

double throughput_probe(const SearchConfig& cfg) {
    validate_config(cfg);
    Space space(cfg);
    Scorer scorer(cfg.field, cfg.degrees);
    auto coeffs = space.make_buffers();
    std::vector<uint64_t> ordinals(space.num_positions());
    SplitMix64 rng = split_stream(cfg.seed, 0);

    // Touch the character table outside the timed region.
    space.draw(rng, ordinals.data());
    space.fill(ordinals.data(), coeffs);
    scorer.score(coeffs);

    uint64_t evaluated = 0;
    auto t0 = std::chrono::steady_clock::now();
    double elapsed = 0;
    do {
        for (int i = 0; i < 512; ++i) {
            space.draw(rng, ordinals.data());
            space.fill(ordinals.data(), coeffs);
            scorer.score(coeffs);
            ++evaluated;
        }
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } while (elapsed < 0.25 && evaluated < cfg.budget);
    return double(evaluated) / elapsed;
}

} // namespace fibrecount
