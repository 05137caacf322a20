from gaborbench.commands import (
    delta_p,
    frame_bounds,
    mub_table,
    prob_checks,
    sv_distribution,
    trace_heatmap,
    trace_moments,
)

COMMANDS = [frame_bounds, sv_distribution, trace_heatmap, trace_moments, mub_table, delta_p, prob_checks]
