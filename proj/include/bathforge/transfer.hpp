// transfer.hpp: state-transfer infidelity through a noisy channel under
// sin^p boundary-coupling modulation

#pragma once

#include <vector>

#include "bathforge/filters.hpp"
#include "bathforge/spectra.hpp"
#include "bathforge/table.hpp"

namespace bathforge::transfer {

struct TransferChannel {
    spectra::BathSpectrum bath;       // coupling to all non-channel modes, centred on the channel resonance
    double transfer_time{1.0};        // T, also the modulation duration
    filters::SinP modulation{};
};

struct TransferResult {
    double infidelity{0.0};   // T * int F_T G dw = (1/2 pi) int |Y_T|^2 G dw
    double fidelity{1.0};
    bool out_of_regime{false};  // raw infidelity exceeded 1; fidelity clamped to 0
};

// The filter keeps the modulation's own energy, int F_T dw = (1/T) int alpha^2 dt,
// so at fixed peak amplitude alpha0 smoother profiles also carry less weight.
TransferResult transfer_fidelity(const TransferChannel& channel);

struct TradeoffRow {
    int p{0};
    double transfer_time{0.0};
    double infidelity{0.0};
    bool out_of_regime{false};
    bool best{false};   // lowest infidelity among the p values at this T
};

// Rows ordered by T, then by p in the order given.
std::vector<TradeoffRow> tradeoff_curve(const spectra::BathSpectrum& bath, const std::vector<double>& times,
                                        const std::vector<int>& ps = {0, 1, 2}, double alpha0 = 1.0);

Table tradeoff_table(const std::vector<TradeoffRow>& rows);

} // namespace bathforge::transfer
