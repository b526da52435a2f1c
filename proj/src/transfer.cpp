// transfer.cpp: transfer fidelity and the p-tradeoff table

#include "bathforge/transfer.hpp"

#include <algorithm>
#include <stdexcept>

#include "bathforge/kk.hpp"

namespace bathforge::transfer {

TransferResult transfer_fidelity(const TransferChannel& channel) {
    const double T = channel.transfer_time;
    if (!(T > 0.0)) throw std::invalid_argument("transfer_fidelity: transfer time must be > 0");
    const filters::FilterFunction filter(
        filters::ControlProtocol{channel.modulation, T});
    TransferResult out;
    out.infidelity = kk::decoherence_rate(filter, channel.bath) * T;
    if (out.infidelity > 1.0) {
        out.out_of_regime = true;
        out.fidelity = 0.0;
    } else {
        out.fidelity = 1.0 - out.infidelity;
    }
    return out;
}

std::vector<TradeoffRow> tradeoff_curve(const spectra::BathSpectrum& bath, const std::vector<double>& times,
                                        const std::vector<int>& ps, double alpha0) {
    if (times.empty() || ps.empty()) throw std::invalid_argument("tradeoff_curve: empty grid");
    std::vector<TradeoffRow> rows;
    rows.reserve(times.size() * ps.size());
    for (double T : times) {
        const std::size_t first = rows.size();
        for (int p : ps) {
            const auto r = transfer_fidelity({bath, T, filters::SinP{p, alpha0}});
            rows.push_back({p, T, r.infidelity, r.out_of_regime, false});
        }
        double best = rows[first].infidelity;
        for (std::size_t i = first; i < rows.size(); ++i) best = std::min(best, rows[i].infidelity);
        for (std::size_t i = first; i < rows.size(); ++i) rows[i].best = rows[i].infidelity == best;
    }
    return rows;
}

Table tradeoff_table(const std::vector<TradeoffRow>& rows) {
    Table t;
    t.columns = {"p", "T[s]", "infidelity[1]", "out_of_regime", "best"};
    for (const auto& r : rows)
        t.add_row({std::int64_t{r.p}, r.transfer_time, r.infidelity, std::int64_t{r.out_of_regime},
                   std::int64_t{r.best}});
    return t;
}

} // namespace bathforge::transfer
