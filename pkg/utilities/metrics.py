# Import math helpers for the decay constant
import math
# Import logging for analysis diagnostics
import logging

# Import numpy for series manipulation
import numpy as np
# Import the bracketing root finder
from scipy.optimize import brentq

# Import the error raised when a series never decays far enough
from utilities.exceptions import NoCrossing
# Import the sampled evolution record
from utilities.typehints import TimeSeries

logger = logging.getLogger(__name__)


# Class to analyze decays and crossings of sampled evolutions
class DecayAnalyzer:
    # Initialize analyzer with the sampled series
    def __init__(self, series: TimeSeries):
        # Store the series as an instance variable
        self.series = series

    # First time the channel falls to 1/e of its initial distance from the baseline
    def one_over_e_time(self, channel: str, baseline: float = 0.0) -> float:
        values = self.series.channel(channel)
        # Threshold lies between the start value and the long-time baseline
        threshold = baseline + (values[0] - baseline) / math.e
        return self.first_crossing(channel, threshold)

    # First crossing time of a fixed level, by linear interpolation between samples
    def first_crossing(self, channel: str, level: float) -> float:
        times = self.series.times
        values = self.series.channel(channel)
        # Signed distance to the level; a crossing is a sign change or an exact hit
        distance = values - level
        start_sign = np.sign(distance[0])
        crossed = np.flatnonzero(np.sign(distance[1:]) != start_sign)
        if start_sign == 0:
            return float(times[0])
        if crossed.size == 0:
            raise NoCrossing(f"channel '{channel}' never crosses {level:.6g} within t <= {times[-1]:.6g}")

        # Interpolate inside the bracketing interval
        upper = int(crossed[0]) + 1
        lower = upper - 1
        t0, t1 = times[lower], times[upper]
        d0, d1 = distance[lower], distance[upper]
        if d1 == d0:
            return float(t1)
        crossing = t0 + (t1 - t0) * d0 / (d0 - d1)
        logger.debug("channel %s crosses %.6g at t=%.6g", channel, level, crossing)
        return float(crossing)

    # Decay rate defined as the inverse of the 1/e time
    def decay_rate(self, channel: str, baseline: float = 0.0) -> float:
        return 1.0 / self.one_over_e_time(channel, baseline)


def decay_constant() -> float:
    """Root x of exp(-x) cos(x / sqrt 3) = exp(-1) on [0.5, 1.5]"""
    return float(brentq(lambda x: math.exp(-x) * math.cos(x / math.sqrt(3.0)) - math.exp(-1.0),
                        0.5, 1.5, xtol=1e-14))
