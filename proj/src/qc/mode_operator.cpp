#include "nwb/qc/mode_operator.hpp"

#include "nwb/qc/clifford.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace nwb::qc {

namespace {
Mode added(const Mode& a, const Mode& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
} // namespace

Eigen::MatrixXcd sign_dirac_at(int n, const Mode& m) {
  double q = 0.0;
  for (int j = 0; j < n; ++j) {
    const double mj = static_cast<double>(m[static_cast<std::size_t>(j)]);
    q += mj * mj;
  }
  if (q == 0.0) return gamma_mat(n, 0);
  const double inv = 1.0 / std::sqrt(q);
  std::array<double, 4> u{0.0, 0.0, 0.0, 0.0};
  for (int j = 0; j < n; ++j)
    u[static_cast<std::size_t>(j)] = static_cast<double>(m[static_cast<std::size_t>(j)]) * inv;
  return clifford(n, u);
}

ModeOperator ModeOperator::zero(int n) { return ModeOperator(n, spinor_rank(n)); }

ModeOperator ModeOperator::identity(int n) {
  ModeOperator op(n, spinor_rank(n));
  op.words_.push_back(Word{});
  return op;
}

ModeOperator ModeOperator::mult(TrigPoly a) {
  ModeOperator op(a.dim(), spinor_rank(a.dim()));
  Word w;
  w.factors.push_back(Factor{Factor::Kind::mult, std::move(a)});
  op.words_.push_back(std::move(w));
  return op;
}

ModeOperator ModeOperator::sign_dirac(int n) {
  ModeOperator op(n, spinor_rank(n));
  Word w;
  w.factors.push_back(Factor{Factor::Kind::sign, TrigPoly(n)});
  op.words_.push_back(std::move(w));
  return op;
}

ModeOperator ModeOperator::dhat(TrigPoly a) {
  ModeOperator op(a.dim(), spinor_rank(a.dim()));
  Word w;
  w.factors.push_back(Factor{Factor::Kind::dhat, std::move(a)});
  op.words_.push_back(std::move(w));
  return op;
}

ModeOperator ModeOperator::operator+(const ModeOperator& o) const {
  if (n_ != o.n_) throw std::invalid_argument("ModeOperator: dimension mismatch");
  ModeOperator out = *this;
  out.words_.insert(out.words_.end(), o.words_.begin(), o.words_.end());
  return out;
}

ModeOperator ModeOperator::operator-(const ModeOperator& o) const {
  return *this + o.scaled(-1.0);
}

ModeOperator ModeOperator::operator*(const ModeOperator& o) const {
  if (n_ != o.n_) throw std::invalid_argument("ModeOperator: dimension mismatch");
  ModeOperator out(n_, d_);
  for (const auto& wa : words_) {
    for (const auto& wb : o.words_) {
      Word w;
      w.coeff = wa.coeff * wb.coeff;
      w.factors = wa.factors;
      w.factors.insert(w.factors.end(), wb.factors.begin(), wb.factors.end());
      out.words_.push_back(std::move(w));
    }
  }
  return out;
}

ModeOperator ModeOperator::scaled(cdbl s) const {
  ModeOperator out = *this;
  if (s == cdbl(0.0, 0.0)) {
    out.words_.clear();
    return out;
  }
  for (auto& w : out.words_) w.coeff *= s;
  return out;
}

ModeOperator ModeOperator::adjoint() const {
  // Mult(a)+ = Mult(a*), F+ = F, (i[F,a])+ = i[F,a*]; words reverse
  ModeOperator out(n_, d_);
  for (const auto& w : words_) {
    Word v;
    v.coeff = std::conj(w.coeff);
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
      Factor f;
      f.kind = it->kind;
      f.poly = (it->kind == Factor::Kind::sign) ? it->poly : it->poly.conjugated();
      v.factors.push_back(std::move(f));
    }
    out.words_.push_back(std::move(v));
  }
  return out;
}

Eigen::MatrixXcd ModeOperator::entry(const Mode& row, const Mode& col) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d_, d_);
  const cdbl iu(0.0, 1.0);
  for (const auto& w : words_) {
    // partial products of the factor suffix, keyed by the intermediate mode
    std::map<Mode, Eigen::MatrixXcd> cur;
    cur.emplace(col, Eigen::MatrixXcd::Identity(d_, d_));
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
      std::map<Mode, Eigen::MatrixXcd> nxt;
      for (const auto& [m, S] : cur) {
        switch (it->kind) {
          case Factor::Kind::mult:
            for (const auto& [k, v] : it->poly.terms()) {
              const Mode mk = added(m, k);
              auto [slot, fresh] = nxt.emplace(mk, v * S);
              if (!fresh) slot->second += v * S;
            }
            break;
          case Factor::Kind::sign: {
            const Eigen::MatrixXcd T = sign_dirac_at(n_, m) * S;
            auto [slot, fresh] = nxt.emplace(m, T);
            if (!fresh) slot->second += T;
            break;
          }
          case Factor::Kind::dhat:
            for (const auto& [k, v] : it->poly.terms()) {
              const Mode mk = added(m, k);
              const Eigen::MatrixXcd T =
                  (iu * v) * ((sign_dirac_at(n_, mk) - sign_dirac_at(n_, m)) * S);
              auto [slot, fresh] = nxt.emplace(mk, T);
              if (!fresh) slot->second += T;
            }
            break;
        }
      }
      cur = std::move(nxt);
    }
    const auto hit = cur.find(row);
    if (hit != cur.end()) out += w.coeff * hit->second;
  }
  return out;
}

std::vector<Mode> ModeOperator::band() const {
  std::set<Mode> total;
  for (const auto& w : words_) {
    std::set<Mode> shifts{{0, 0, 0, 0}};
    for (const auto& f : w.factors) {
      if (f.kind == Factor::Kind::sign) continue;
      std::set<Mode> nxt;
      for (const auto& s : shifts)
        for (const auto& [k, v] : f.poly.terms()) {
          (void)v;
          nxt.insert(added(s, k));
        }
      shifts = std::move(nxt);
    }
    total.insert(shifts.begin(), shifts.end());
  }
  return {total.begin(), total.end()};
}

std::vector<Mode> ModeOperator::dense_modes(int M) const {
  std::vector<Mode> modes;
  Mode m{0, 0, 0, 0};
  std::array<int, 4> lo{-M, -M, -M, -M}, hi{M, M, M, M};
  for (int j = n_; j < 4; ++j) lo[static_cast<std::size_t>(j)] = hi[static_cast<std::size_t>(j)] = 0;
  for (m[0] = lo[0]; m[0] <= hi[0]; ++m[0])
    for (m[1] = lo[1]; m[1] <= hi[1]; ++m[1])
      for (m[2] = lo[2]; m[2] <= hi[2]; ++m[2])
        for (m[3] = lo[3]; m[3] <= hi[3]; ++m[3]) modes.push_back(m);
  return modes;
}

Eigen::MatrixXcd ModeOperator::dense(int M) const {
  const auto modes = dense_modes(M);
  std::map<Mode, std::size_t> index;
  for (std::size_t i = 0; i < modes.size(); ++i) index.emplace(modes[i], i);
  const std::size_t dim = modes.size() * static_cast<std::size_t>(d_);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
  const auto shifts = band();
  for (std::size_t c = 0; c < modes.size(); ++c) {
    for (const auto& k : shifts) {
      const Mode r = added(modes[c], k);
      const auto it = index.find(r);
      if (it == index.end()) continue;
      out.block(static_cast<Eigen::Index>(it->second * static_cast<std::size_t>(d_)),
                static_cast<Eigen::Index>(c * static_cast<std::size_t>(d_)), d_, d_) =
          entry(r, modes[c]);
    }
  }
  return out;
}

} // namespace nwb::qc
