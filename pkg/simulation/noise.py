"""
Observation noise keyed on (seed, track_id, frame).

Each track owns an independent generator seeded with the pair
(seed, track_id); frame i always reads row i of that track's block, so the
value added to an observation never depends on generation order.
"""

import numpy as np


def track_noise(seed: int, track_id: int, n_frames: int, sigma: float) -> np.ndarray:
    """
    Gaussian image noise for one track.

    Args:
        seed: scene seed (non-negative)
        track_id: non-negative track id
        n_frames: number of frames of the scene
        sigma: standard deviation per coordinate

    Returns:
        (n_frames, 2) array; row i is the noise for frame i
    """
    if sigma == 0:
        return np.zeros((n_frames, 2))
    rng = np.random.default_rng([int(seed), int(track_id)])
    return sigma * rng.standard_normal((n_frames, 2))


def noise_at(seed: int, track_id: int, frame: int, sigma: float) -> np.ndarray:
    """Noise of a single observation; equals row `frame` of `track_noise` for any n_frames"""
    return track_noise(seed, track_id, frame + 1, sigma)[frame]
