#include "odo/hierarchy.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "odo/errors.hpp"
#include "odo/linalg.hpp"

namespace odo {

DiffOperator formal_operator(int n) {
    if (n < 2) throw ContractError("operator order must be at least 2");
    DiffOperator l = DiffOperator::monomial(DiffPoly(1), n);
    for (int j = 2; j <= n; ++j) l.set(n - j, DiffPoly::var(j));
    return l;
}

namespace {

std::vector<DiffPoly> gd_vector(const DiffOperator& l, const DiffOperator& p, int n, int m) {
    DiffOperator c = commutator(l, p);
    if (c.order() > n - 2)
        throw ContractError("[L, P_" + std::to_string(m) + "] has order " + std::to_string(c.order()));
    std::vector<DiffPoly> h;
    for (int k = 0; k <= n - 2; ++k) h.push_back(c.coeff(k));
    return h;
}

}  // namespace

std::vector<HierarchyEntry> almost_commuting_range(int n, int max_m) {
    if (max_m < 1) throw ContractError("m must be positive");
    DiffOperator l = formal_operator(n);
    DiffOperator q = nth_root(l, max_m);
    std::vector<HierarchyEntry> out;
    DiffOperator power = q;
    for (int m = 1; m <= max_m; ++m) {
        if (m > 1) power = op_mul(power, q);
        HierarchyEntry e;
        e.n = n;
        e.m = m;
        e.p = positive_part(power);
        e.h = gd_vector(l, e.p, n, m);
        out.push_back(std::move(e));
    }
    return out;
}

HierarchyEntry almost_commuting(int n, int m) { return almost_commuting_range(n, m).back(); }

std::vector<DiffMonomial> weight_monomials(int n, int w) {
    std::vector<std::uint16_t> vars;
    for (int l = 2; l <= n; ++l)
        for (int k = 0; l + k <= w; ++k) vars.push_back(DiffVar{l, k}.code());
    std::sort(vars.begin(), vars.end());
    std::vector<DiffMonomial> out;
    DiffMonomial current;
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int rest) {
        if (rest == 0) {
            out.push_back(current);
            return;
        }
        if (idx == vars.size()) return;
        int vw = DiffVar::from_code(vars[idx]).weight();
        for (int e = rest / vw; e >= 1; --e) {
            current.emplace_back(vars[idx], static_cast<std::uint16_t>(e));
            rec(idx + 1, rest - e * vw);
            current.pop_back();
        }
        rec(idx + 1, rest);
    };
    rec(0, w);
    return out;
}

namespace {

/// Unique p of weight w with dp_derive(p) = target.
DiffPoly integrate(int n, int w, const DiffPoly& target) {
    std::vector<DiffMonomial> basis = weight_monomials(n, w);
    std::map<DiffMonomial, std::size_t> rows;
    std::vector<DiffPoly> images;
    for (const auto& mono : basis) {
        images.push_back(dp_derive(DiffPoly::monomial(mono, 1)));
        for (const auto& [m, c] : images.back().terms()) rows.try_emplace(m, rows.size());
    }
    for (const auto& [m, c] : target.terms()) rows.try_emplace(m, rows.size());
    Matrix<Rational> a(rows.size(), std::vector<Rational>(basis.size(), Rational(0)));
    std::vector<Rational> b(rows.size(), Rational(0));
    for (std::size_t j = 0; j < images.size(); ++j)
        for (const auto& [m, c] : images[j].terms()) a[rows.at(m)][j] = c;
    for (const auto& [m, c] : target.terms()) b[rows.at(m)] = c;
    LinearSolution<Rational> s = solve(a, b, basis.size());
    if (!s.consistent) throw ContractError("ansatz block of weight " + std::to_string(w) + " is inconsistent");
    if (!s.kernel.empty()) throw ContractError("ansatz block of weight " + std::to_string(w) + " is not unique");
    DiffPoly p;
    for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[j], s.particular[j]);
    return p;
}

}  // namespace

HierarchyEntry ansatz_oracle(int n, int m) {
    if (m < 1) throw ContractError("m must be positive");
    DiffOperator l = formal_operator(n);
    DiffOperator p = DiffOperator::monomial(DiffPoly(1), m);
    // The coefficient of D^(m+n-1-i) in [P, L] is R_i - n p_i', where R_i
    // only involves p_2..p_{i-1}.
    for (int i = 2; i <= m; ++i) {
        DiffPoly residual = commutator(p, l).coeff(m + n - 1 - i);
        residual *= Rational(1, n);
        p.set(m - i, integrate(n, i, residual));
    }
    HierarchyEntry e;
    e.n = n;
    e.m = m;
    e.h = gd_vector(l, p, n, m);
    e.p = std::move(p);
    return e;
}

std::vector<int> full_index_set(int n, int m) {
    std::vector<int> j;
    for (int i = 1; i <= m; ++i)
        if (i % n != 0) j.push_back(i);
    return j;
}

std::string serialize(const HierarchyEntry& e) {
    std::string out = "gd-cache v1 n=" + std::to_string(e.n) + " m=" + std::to_string(e.m) + "\n";
    for (auto it = e.p.terms().rbegin(); it != e.p.terms().rend(); ++it)
        out += "P " + std::to_string(it->first) + " " + it->second.to_string() + "\n";
    for (std::size_t k = 0; k < e.h.size(); ++k) out += "H " + std::to_string(k) + " " + e.h[k].to_string() + "\n";
    return out;
}

HierarchyEntry parse_entry(std::string_view text) {
    std::size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        if (pos >= text.size()) return std::nullopt;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        return line;
    };
    auto header = next_line();
    HierarchyEntry e;
    {
        if (!header) throw ParseError("empty cache file", 0);
        std::istringstream in{std::string(*header)};
        std::string tag, ver, ns, ms;
        in >> tag >> ver >> ns >> ms;
        if (tag != "gd-cache" || ver != "v1" || ns.rfind("n=", 0) != 0 || ms.rfind("m=", 0) != 0)
            throw ParseError("bad cache header", 0);
        try {
            e.n = std::stoi(ns.substr(2));
            e.m = std::stoi(ms.substr(2));
        } catch (const std::exception&) {
            throw ParseError("bad cache header", 0);
        }
        if (e.n < 2 || e.m < 1) throw ParseError("bad cache header", 0);
    }
    e.h.assign(static_cast<std::size_t>(e.n - 1), DiffPoly());
    std::vector<bool> seen_h(e.h.size(), false);
    while (auto line = next_line()) {
        std::size_t start = pos - line->size() - 1;
        if (line->empty()) continue;
        if (line->size() < 4 || (line->front() != 'P' && line->front() != 'H') || (*line)[1] != ' ')
            throw ParseError("bad cache line", start);
        std::size_t sp = line->find(' ', 2);
        if (sp == std::string_view::npos) throw ParseError("bad cache line", start);
        int index = 0;
        try {
            index = std::stoi(std::string(line->substr(2, sp - 2)));
        } catch (const std::exception&) {
            throw ParseError("bad index", start + 2);
        }
        DiffPoly value;
        try {
            value = parse_diffpoly(line->substr(sp + 1));
        } catch (const ParseError& err) {
            throw ParseError(std::string("bad polynomial: ") + err.what(), start + sp + 1);
        }
        if (line->front() == 'P') {
            if (index < 0 || index > e.m || !e.p.coeff(index).is_zero()) throw ParseError("bad P line", start);
            e.p.set(index, std::move(value));
        } else {
            if (index < 0 || index >= e.n - 1 || seen_h[static_cast<std::size_t>(index)])
                throw ParseError("bad H line", start);
            seen_h[static_cast<std::size_t>(index)] = true;
            e.h[static_cast<std::size_t>(index)] = std::move(value);
        }
    }
    for (bool s : seen_h)
        if (!s) throw ParseError("missing H line", text.size());
    if (e.p.order() != e.m || !e.p.coeff(e.m).is_one()) throw ParseError("P is not monic of order m", text.size());
    return e;
}

HierarchyStore::HierarchyStore(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
    if (!dir_) {
        if (const char* env = std::getenv("ODO_CACHE_DIR"); env && *env) dir_ = std::filesystem::path(env);
    }
}

std::filesystem::path HierarchyStore::file_for(int n, int m) const {
    if (!dir_) throw ContractError("no cache directory configured");
    return *dir_ / ("gd-n" + std::to_string(n) + "-m" + std::to_string(m) + ".txt");
}

void HierarchyStore::publish(HierarchyEntry e, bool write) {
    auto key = std::make_pair(e.n, e.m);
    if (write && dir_) {
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        std::filesystem::path target = file_for(e.n, e.m);
        std::filesystem::path tmp = target;
        tmp += ".tmp" + std::to_string(std::random_device{}());
        {
            std::ofstream out(tmp, std::ios::binary);
            out << serialize(e);
            if (!out) throw ResourceError("cannot write cache file " + tmp.string());
        }
        std::filesystem::rename(tmp, target, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
            throw ResourceError("cannot publish cache file " + target.string());
        }
    }
    std::lock_guard lock(mutex_);
    entries_.try_emplace(key, std::make_unique<const HierarchyEntry>(std::move(e)));
}

const HierarchyEntry& HierarchyStore::get(int n, int m) {
    if (n < 2 || m < 1) throw ContractError("hierarchy index out of range");
    auto key = std::make_pair(n, m);
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return *it->second;
    }
    if (dir_) {
        std::ifstream in(file_for(n, m), std::ios::binary);
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            try {
                HierarchyEntry e = parse_entry(buf.str());
                if (e.n == n && e.m == m) {
                    publish(std::move(e), false);
                    std::lock_guard lock(mutex_);
                    ++disk_hits_;
                    return *entries_.at(key);
                }
            } catch (const ParseError&) {
                // Corrupt file: recompute and overwrite below.
            }
        }
    }
    for (auto& e : almost_commuting_range(n, m)) {
        bool missing;
        {
            std::lock_guard lock(mutex_);
            missing = entries_.find({e.n, e.m}) == entries_.end();
        }
        if (!missing) continue;
        bool write = !dir_ || e.m == m || !std::filesystem::exists(file_for(e.n, e.m));
        publish(std::move(e), write);
        std::lock_guard lock(mutex_);
        ++computed_;
    }
    std::lock_guard lock(mutex_);
    return *entries_.at(key);
}

std::map<int, const HierarchyEntry*> HierarchyStore::gd_symbolic_system(int n, int m) {
    if (m % n == 0) throw ContractError("m = " + std::to_string(m) + " is a multiple of n = " + std::to_string(n));
    get(n, m);
    std::map<int, const HierarchyEntry*> out;
    for (int j : full_index_set(n, m)) out.emplace(j, &get(n, j));
    return out;
}

std::size_t HierarchyStore::clear_disk() {
    if (!dir_ || !std::filesystem::exists(*dir_)) return 0;
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(*dir_)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("gd-n", 0) == 0 && entry.path().extension() == ".txt") {
            std::filesystem::remove(entry.path());
            ++count;
        }
    }
    return count;
}

HierarchyStore& default_store() {
    static HierarchyStore store;
    return store;
}

}  // namespace odo
