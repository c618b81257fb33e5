#include "fastmm/tpp.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fastmm {

StppResult<std::size_t> stpp_check(const AbelianTripleCollection& c) {
    AbelianOps ops{&c.group};
    return stpp_check(ops, c.triples);
}

namespace {

struct SearchState {
    const AbelianGroup* group;
    std::vector<std::array<std::size_t, 3>> sizes;
    AbelianTripleCollection current;
    std::size_t budget = 0;
    std::size_t used = 0;

    explicit SearchState(const AbelianGroup& g) : group(&g), current{g, {}} {}

    // STPP check restricted to the sets placed so far. Sets only grow, so
    // a violation among placed elements is permanent; skipping the empty
    // sets makes the pruning sound without false positives.
    bool consistent() const {
        AbelianOps ops{group};
        const auto& ts = current.triples;
        const std::size_t n = ts.size();
        const std::uint64_t id_key = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (ts[i][0].empty() || ts[j][0].empty()) continue;
                auto qx = quotient_set(ops, ts[i][0], ts[j][0]);
                for (std::size_t k = 0; k < n; ++k) {
                    if (ts[j][1].empty() || ts[k][1].empty() || ts[k][2].empty() ||
                        ts[i][2].empty())
                        continue;
                    auto qy = quotient_set(ops, ts[j][1], ts[k][1]);
                    auto qz = quotient_set(ops, ts[k][2], ts[i][2]);
                    std::set<std::uint64_t> zkeys(qz.begin(), qz.end());
                    for (auto a : qx)
                        for (auto b : qy) {
                            std::size_t need = ops.inv(ops.mul(a, b));
                            if (!zkeys.count(need)) continue;
                            bool trivial = i == j && j == k && a == id_key &&
                                           b == id_key && need == id_key;
                            if (!trivial) return false;
                        }
                }
            }
        return true;
    }

    bool fill(std::size_t triple_idx, int which, std::size_t slot);
    bool next_slot(std::size_t triple_idx, int which);
};

bool SearchState::next_slot(std::size_t triple_idx, int which) {
    if (which < 2) return fill(triple_idx, which + 1, 0);
    if (triple_idx + 1 < sizes.size()) return fill(triple_idx + 1, 0, 0);
    return stpp_check(current).ok;  // complete; final verification
}

bool SearchState::fill(std::size_t triple_idx, int which, std::size_t slot) {
    const std::size_t want = sizes[triple_idx][which];
    if (slot == want) return next_slot(triple_idx, which);

    auto& set = current.triples[triple_idx][which];
    std::size_t start = slot == 0 ? 0 : set.back() + 1;
    // the first element of each set of the first triple is pinned to the
    // identity (any solution can be translated so this holds)
    std::size_t stop = group->order();
    if (triple_idx == 0 && slot == 0) stop = 1;

    for (std::size_t e = start; e < stop; ++e) {
        if (used >= budget) return false;
        ++used;
        set.push_back(e);
        if (consistent() && fill(triple_idx, which, slot + 1)) return true;
        set.pop_back();
    }
    return false;
}

}  // namespace

std::optional<AbelianTripleCollection> stpp_search(
    const AbelianGroup& h, int n, const std::vector<std::array<std::size_t, 3>>& sizes,
    std::size_t budget) {
    if (n < 1) throw std::invalid_argument("stpp_search: n must be >= 1");
    if (sizes.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("stpp_search: one size triple per collection triple");
    for (const auto& s : sizes) {
        if (s[0] < 1 || s[1] < 1 || s[2] < 1)
            throw std::invalid_argument("stpp_search: sizes must be >= 1");
        if (s[0] > h.order() || s[1] > h.order() || s[2] > h.order()) return std::nullopt;
    }

    SearchState st(h);
    st.sizes = sizes;
    st.current.triples.assign(n, {});
    st.budget = budget;
    if (st.fill(0, 0, 0)) return st.current;
    return std::nullopt;
}

std::optional<AbelianTripleCollection> stpp_search(const AbelianGroup& h, int n,
                                                   std::array<std::size_t, 3> sizes,
                                                   std::size_t budget) {
    return stpp_search(h, n, std::vector<std::array<std::size_t, 3>>(n, sizes), budget);
}

namespace {

std::string format_element(const AbelianGroup& g, std::size_t idx) {
    std::vector<int> t = g.element(idx);
    std::string out = "(";
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(t[j]);
    }
    return out + ")";
}

std::size_t parse_element(const AbelianGroup& g, const std::string& token) {
    if (token.size() < 3 || token.front() != '(' || token.back() != ')')
        throw std::runtime_error("family file: bad element token '" + token + "'");
    std::vector<int> tuple;
    std::string inner = token.substr(1, token.size() - 2);
    std::istringstream is(inner);
    std::string part;
    while (std::getline(is, part, ',')) tuple.push_back(std::stoi(part));
    if (tuple.size() != g.factors().size())
        throw std::runtime_error("family file: element arity mismatch in '" + token + "'");
    return g.index(tuple);
}

}  // namespace

void write_family(std::ostream& os, const AbelianTripleCollection& c, bool certified) {
    os << "H: ";
    const auto& f = c.group.factors();
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (j) os << ",";
        os << f[j];
    }
    os << "\nN: " << c.triples.size() << "\n";
    const char* names[3] = {"X", "Y", "Z"};
    for (const auto& t : c.triples)
        for (int w = 0; w < 3; ++w) {
            os << names[w] << ":";
            for (std::size_t e : t[w]) os << ' ' << format_element(c.group, e);
            os << '\n';
        }
    if (certified) os << "STPP: verified\n";
}

AbelianTripleCollection read_family(std::istream& is) {
    auto next_line = [&is](std::string& line) {
        while (std::getline(is, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    auto expect_prefix = [](const std::string& line, const std::string& prefix) {
        if (line.rfind(prefix, 0) != 0)
            throw std::runtime_error("family file: expected '" + prefix + "' line, got '" +
                                     line + "'");
        return line.substr(prefix.size());
    };

    std::string line;
    if (!next_line(line)) throw std::runtime_error("family file: empty");
    std::string hspec = expect_prefix(line, "H:");
    std::vector<int> factors;
    {
        std::istringstream hs(hspec);
        std::string part;
        while (std::getline(hs, part, ',')) factors.push_back(std::stoi(part));
    }
    if (factors.empty()) throw std::runtime_error("family file: no group factors");

    if (!next_line(line)) throw std::runtime_error("family file: missing N");
    int n = std::stoi(expect_prefix(line, "N:"));
    if (n < 1) throw std::runtime_error("family file: N must be >= 1");

    AbelianTripleCollection c{AbelianGroup(factors), {}};
    const char* names[3] = {"X:", "Y:", "Z:"};
    for (int i = 0; i < n; ++i) {
        std::array<std::vector<std::size_t>, 3> triple;
        for (int w = 0; w < 3; ++w) {
            if (!next_line(line))
                throw std::runtime_error("family file: truncated (triple " +
                                         std::to_string(i + 1) + ")");
            std::istringstream ls(expect_prefix(line, names[w]));
            std::string token;
            while (ls >> token) triple[w].push_back(parse_element(c.group, token));
            if (triple[w].empty())
                throw std::runtime_error("family file: empty subset in triple " +
                                         std::to_string(i + 1));
        }
        c.triples.push_back(std::move(triple));
    }
    return c;  // trailing certificate line, if present, is ignored here
}

void save_family(const std::string& path, const AbelianTripleCollection& c, bool certified) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    write_family(os, c, certified);
}

AbelianTripleCollection load_family(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_family(is);
}

}  // namespace fastmm
