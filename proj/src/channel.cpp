#include "fsc/channel.hpp"

#include <fstream>
#include <sstream>

#include "fsc/errors.hpp"
#include "json.hpp"

namespace fsc {

std::string FscParams::digest() const {
    std::ostringstream os;
    os << nx << "," << ny << "," << ns << ";";
    for (const Rat& r : p) os << r.to_slash_string() << ",";
    os << ";";
    for (const Rat& r : q) os << r.to_slash_string() << ",";
    return os.str();
}

FscParams validate(FscParams raw) {
    if (raw.nx < 2 || raw.ny < 2 || raw.ns < 2)
        throw ShapeError("alphabet sizes must satisfy |X|,|Y|,|S| >= 2");
    if (raw.p.size() != static_cast<size_t>(raw.ns) * raw.nx * raw.ny)
        throw ShapeError("p tensor has " + std::to_string(raw.p.size()) + " entries, expected " +
                         std::to_string(static_cast<size_t>(raw.ns) * raw.nx * raw.ny));
    if (raw.q.size() != static_cast<size_t>(raw.ns) * raw.nx * raw.ns)
        throw ShapeError("q tensor has " + std::to_string(raw.q.size()) + " entries, expected " +
                         std::to_string(static_cast<size_t>(raw.ns) * raw.nx * raw.ns));
    auto check_rows = [](const char* name, const std::vector<Rat>& t, int ns, int nx, int row_len) {
        for (int s = 0; s < ns; ++s) {
            for (int x = 0; x < nx; ++x) {
                Rat sum;
                for (int j = 0; j < row_len; ++j) {
                    const Rat& v = t[(static_cast<size_t>(s) * nx + x) * row_len + j];
                    if (v.is_negative())
                        throw NegativeEntryError(std::string(name) + "(" + std::to_string(j) +
                                                 "|x=" + std::to_string(x) +
                                                 ",s=" + std::to_string(s) + ")");
                    sum += v;
                }
                if (sum != Rat(1))
                    throw RowSumError(std::string(name) + "(.|x=" + std::to_string(x) +
                                          ",s=" + std::to_string(s) + ")",
                                      sum.to_string());
            }
        }
    };
    check_rows("p", raw.p, raw.ns, raw.nx, raw.ny);
    check_rows("q", raw.q, raw.ns, raw.nx, raw.ns);
    return raw;
}

namespace {
void check_block_args(const FscParams& fsc, const std::vector<int>& x_seq, int s0) {
    if (x_seq.empty()) throw ParamRange("block length must be >= 1");
    if (s0 < 0 || s0 >= fsc.ns) throw ParamRange("initial state out of range");
    for (int x : x_seq)
        if (x < 0 || x >= fsc.nx) throw ParamRange("input symbol out of range");
}
}  // namespace

JointBlockLaw joint_block_law(const FscParams& fsc, const std::vector<int>& x_seq, int s0) {
    check_block_args(fsc, x_seq, s0);
    const int n = static_cast<int>(x_seq.size());
    JointBlockLaw law;
    law.n = n;
    law.ny = fsc.ny;
    law.ns = fsc.ns;
    law.x_seq = x_seq;
    law.s0 = s0;

    // base case n=1: one-step law from s0
    std::vector<Rat> cur(static_cast<size_t>(fsc.ny) * fsc.ns);
    for (int y = 0; y < fsc.ny; ++y)
        for (int s = 0; s < fsc.ns; ++s)
            cur[static_cast<size_t>(y) * fsc.ns + s] =
                fsc.p_at(y, x_seq[0], s0) * fsc.q_at(s, x_seq[0], s0);

    long y_count = fsc.ny;
    for (int t = 1; t < n; ++t) {
        const int x = x_seq[t];
        std::vector<Rat> next(static_cast<size_t>(y_count) * fsc.ny * fsc.ns);
        for (long yi = 0; yi < y_count; ++yi) {
            for (int sp = 0; sp < fsc.ns; ++sp) {
                const Rat& mass = cur[static_cast<size_t>(yi) * fsc.ns + sp];
                if (mass.is_zero()) continue;
                for (int y = 0; y < fsc.ny; ++y) {
                    const Rat& py = fsc.p_at(y, x, sp);
                    if (py.is_zero()) continue;
                    Rat py_mass = mass * py;
                    for (int s = 0; s < fsc.ns; ++s) {
                        const Rat& qs = fsc.q_at(s, x, sp);
                        if (qs.is_zero()) continue;
                        next[(static_cast<size_t>(yi) * fsc.ny + y) * fsc.ns + s] += py_mass * qs;
                    }
                }
            }
        }
        cur = std::move(next);
        y_count *= fsc.ny;
    }
    law.table = std::move(cur);
    return law;
}

Rat JointBlockLaw::total() const {
    Rat sum;
    for (const Rat& v : table) sum += v;
    return sum;
}

std::vector<Rat> output_block_law(const FscParams& fsc, const std::vector<int>& x_seq, int s0) {
    JointBlockLaw law = joint_block_law(fsc, x_seq, s0);
    long y_count = 1;
    for (int t = 0; t < law.n; ++t) y_count *= fsc.ny;
    std::vector<Rat> out(static_cast<size_t>(y_count));
    for (long yi = 0; yi < y_count; ++yi)
        for (int s = 0; s < fsc.ns; ++s) out[static_cast<size_t>(yi)] += law.at(yi, s);
    return out;
}

std::vector<Rat> state_kernel(const FscParams& fsc, const std::vector<int>& x_seq, int s0) {
    check_block_args(fsc, x_seq, s0);
    std::vector<Rat> cur(static_cast<size_t>(fsc.ns));
    cur[static_cast<size_t>(s0)] = Rat(1);
    for (int x : x_seq) {
        std::vector<Rat> next(static_cast<size_t>(fsc.ns));
        for (int sp = 0; sp < fsc.ns; ++sp) {
            if (cur[sp].is_zero()) continue;
            for (int s = 0; s < fsc.ns; ++s) next[s] += cur[sp] * fsc.q_at(s, x, sp);
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<Rat> state_kernel_via_marginal(const FscParams& fsc, const std::vector<int>& x_seq,
                                           int s0) {
    JointBlockLaw law = joint_block_law(fsc, x_seq, s0);
    long y_count = 1;
    for (int t = 0; t < law.n; ++t) y_count *= fsc.ny;
    std::vector<Rat> out(static_cast<size_t>(fsc.ns));
    for (long yi = 0; yi < y_count; ++yi)
        for (int s = 0; s < fsc.ns; ++s) out[static_cast<size_t>(s)] += law.at(yi, s);
    return out;
}

Rat distance(const FscParams& a, const FscParams& b, int s0) {
    if (a.nx != b.nx || a.ny != b.ny || a.ns != b.ns)
        throw ShapeMismatch("distance requires identical alphabets");
    if (s0 < 0 || s0 >= a.ns) throw ParamRange("state out of range");
    Rat max_p, max_q;
    for (int x = 0; x < a.nx; ++x) {
        Rat sp, sq;
        for (int y = 0; y < a.ny; ++y) sp += (a.p_at(y, x, s0) - b.p_at(y, x, s0)).abs();
        for (int s = 0; s < a.ns; ++s) sq += (a.q_at(s, x, s0) - b.q_at(s, x, s0)).abs();
        if (sp > max_p) max_p = sp;
        if (sq > max_q) max_q = sq;
    }
    return max_p + max_q;
}

bool q_input_independent(const FscParams& fsc) {
    for (int s = 0; s < fsc.ns; ++s)
        for (int x = 1; x < fsc.nx; ++x)
            for (int sn = 0; sn < fsc.ns; ++sn)
                if (fsc.q_at(sn, x, s) != fsc.q_at(sn, 0, s)) return false;
    return true;
}

// ---- families ----------------------------------------------------------------

std::vector<Rat> family_p(const Rat& eps, int nx, int ny, int ns) {
    if (eps <= Rat(0) || eps >= Rat(1, 2)) throw ParamRange("family_p requires 0 < eps < 1/2");
    if (nx < 2 || ny < 2 || ns < 2) throw ParamRange("family_p requires alphabet sizes >= 2");
    std::vector<Rat> p(static_cast<size_t>(ns) * nx * ny);
    auto at = [&](int y, int x, int s) -> Rat& {
        return p[(static_cast<size_t>(s) * nx + x) * ny + y];
    };
    for (int s = 0; s < ns; ++s) {
        for (int x = 0; x < nx; ++x) {
            if (s < 2 && x < 2) {
                if (s == 0) {
                    at(x, x, s) = Rat(1);  // noiseless
                } else {
                    at(x, x, s) = Rat(1) - eps;
                    at(1 - x, x, s) = eps;  // BSC branch
                }
            } else {
                at(0, x, s) = Rat(1);  // padded row: unit mass on y = 0
            }
        }
    }
    return p;
}

namespace {
std::vector<Rat> two_state_q(const Rat& stay0, const Rat& stay1, int nx, int ns) {
    if (nx < 2 || ns < 2) throw ParamRange("state family requires alphabet sizes >= 2");
    std::vector<Rat> q(static_cast<size_t>(ns) * nx * ns);
    auto at = [&](int sn, int x, int s) -> Rat& {
        return q[(static_cast<size_t>(s) * nx + x) * ns + sn];
    };
    for (int s = 0; s < ns; ++s) {
        for (int x = 0; x < nx; ++x) {
            if (s == 0) {
                at(0, x, s) = stay0;
                at(1, x, s) = Rat(1) - stay0;
            } else if (s == 1) {
                at(1, x, s) = stay1;
                at(0, x, s) = Rat(1) - stay1;
            } else {
                at(0, x, s) = Rat(1);  // padded row: unit mass on state 0
            }
        }
    }
    return q;
}
}  // namespace

std::vector<Rat> family_qhat(int nx, int ns) { return two_state_q(Rat(1), Rat(1), nx, ns); }

std::vector<Rat> family_qlambda(const Rat& lambda, int nx, int ns) {
    if (lambda < Rat(0) || lambda > Rat(1, 2))
        throw ParamRange("family_qlambda requires 0 <= lambda <= 1/2");
    return two_state_q(Rat(1) - lambda, Rat(1) - lambda, nx, ns);
}

std::vector<Rat> family_qk(long k, int nx, int ns) {
    if (k < 1) throw ParamRange("family_qk requires k >= 1");
    return family_qlambda(Rat(1, k + 1), nx, ns);
}

FscParams make_fsc(int nx, int ny, int ns, std::vector<Rat> p, std::vector<Rat> q) {
    FscParams f;
    f.nx = nx;
    f.ny = ny;
    f.ns = ns;
    f.p = std::move(p);
    f.q = std::move(q);
    return validate(std::move(f));
}

FscParams fsc_p_qhat(const Rat& eps) { return make_fsc(2, 2, 2, family_p(eps), family_qhat()); }

FscParams fsc_p_qlambda(const Rat& eps, const Rat& lambda) {
    return make_fsc(2, 2, 2, family_p(eps), family_qlambda(lambda));
}

FscParams fsc_p_qk(const Rat& eps, long k) {
    return make_fsc(2, 2, 2, family_p(eps), family_qk(k));
}

// ---- block channel -------------------------------------------------------------

long encode_seq(const std::vector<int>& seq, int base) {
    long idx = 0;
    for (int v : seq) idx = idx * base + v;
    return idx;
}

std::vector<int> decode_seq(long idx, int base, int n) {
    std::vector<int> seq(static_cast<size_t>(n));
    for (int t = n - 1; t >= 0; --t) {
        seq[static_cast<size_t>(t)] = static_cast<int>(idx % base);
        idx /= base;
    }
    return seq;
}

RatMatrix block_channel_matrix(const FscParams& fsc, int n, int s0) {
    if (n < 1) throw ParamRange("block length must be >= 1");
    long x_count = 1, y_count = 1;
    for (int t = 0; t < n; ++t) {
        x_count *= fsc.nx;
        y_count *= fsc.ny;
    }
    RatMatrix w(static_cast<int>(x_count), static_cast<int>(y_count));
    for (long xi = 0; xi < x_count; ++xi) {
        std::vector<Rat> row = output_block_law(fsc, decode_seq(xi, fsc.nx, n), s0);
        for (long yi = 0; yi < y_count; ++yi) w.at(static_cast<int>(xi), static_cast<int>(yi)) = row[static_cast<size_t>(yi)];
    }
    return w;
}

// ---- JSON io --------------------------------------------------------------------

namespace {
std::vector<Rat> tensor_from_json(const nlohmann::json& j, const char* name, int ns, int nx,
                                  int row_len) {
    if (!j.is_array() || j.size() != static_cast<size_t>(ns))
        throw ParseError(std::string(name) + " must be an array of " + std::to_string(ns) +
                         " state slices");
    std::vector<Rat> t(static_cast<size_t>(ns) * nx * row_len);
    for (int s = 0; s < ns; ++s) {
        const auto& slice = j[static_cast<size_t>(s)];
        if (!slice.is_array() || slice.size() != static_cast<size_t>(nx))
            throw ParseError(std::string(name) + "[" + std::to_string(s) + "] must have " +
                             std::to_string(nx) + " rows");
        for (int x = 0; x < nx; ++x) {
            const auto& row = slice[static_cast<size_t>(x)];
            if (!row.is_array() || row.size() != static_cast<size_t>(row_len))
                throw ParseError(std::string(name) + " row has wrong length");
            for (int v = 0; v < row_len; ++v) {
                const auto& cell = row[static_cast<size_t>(v)];
                if (!cell.is_string())
                    throw ParseError(std::string(name) +
                                     " entries must be rational strings \"a/b\"; "
                                     "floating-point channel entries are refused");
                t[(static_cast<size_t>(s) * nx + x) * row_len + v] =
                    Rat::from_string(cell.get<std::string>());
            }
        }
    }
    return t;
}
}  // namespace

FscParams parse_channel_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid channel JSON: ") + e.what());
    }
    if (!j.contains("nx") || !j.contains("ny") || !j.contains("ns") || !j.contains("p") ||
        !j.contains("q"))
        throw ParseError("channel JSON requires nx, ny, ns, p, q");
    FscParams f;
    f.nx = j["nx"].get<int>();
    f.ny = j["ny"].get<int>();
    f.ns = j["ns"].get<int>();
    if (f.nx < 2 || f.ny < 2 || f.ns < 2) throw ShapeError("alphabet sizes must be >= 2");
    f.p = tensor_from_json(j["p"], "p", f.ns, f.nx, f.ny);
    f.q = tensor_from_json(j["q"], "q", f.ns, f.nx, f.ns);
    return validate(std::move(f));
}

FscParams load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open channel file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_channel_json(buf.str());
}

std::string channel_to_json(const FscParams& fsc) {
    nlohmann::json j;
    j["nx"] = fsc.nx;
    j["ny"] = fsc.ny;
    j["ns"] = fsc.ns;
    auto tensor = [](const std::vector<Rat>& t, int ns, int nx, int row_len) {
        nlohmann::json out = nlohmann::json::array();
        for (int s = 0; s < ns; ++s) {
            nlohmann::json slice = nlohmann::json::array();
            for (int x = 0; x < nx; ++x) {
                nlohmann::json row = nlohmann::json::array();
                for (int v = 0; v < row_len; ++v)
                    row.push_back(t[(static_cast<size_t>(s) * nx + x) * row_len + v].to_slash_string());
                slice.push_back(std::move(row));
            }
            out.push_back(std::move(slice));
        }
        return out;
    };
    j["p"] = tensor(fsc.p, fsc.ns, fsc.nx, fsc.ny);
    j["q"] = tensor(fsc.q, fsc.ns, fsc.nx, fsc.ns);
    return j.dump(2);
}

}  // namespace fsc
