import math

import pytest

import drxsim


def small_config(**overrides):
    cfg = drxsim.Config()
    cfg.steps_per_episode = 400
    cfg.episodes = 2
    cfg.runs = 1
    cfg.batch_size = 16
    cfg.num_ues = 2
    for k, v in overrides.items():
        setattr(cfg, k, v)
    return cfg


def test_arrivals_are_ordered_and_bounded():
    a = drxsim.generate_arrivals(2000, seed=3)
    assert abs(len(a) - 2000 / 16.6) <= 3
    ttis = [t for t, _ in a]
    assert ttis == sorted(ttis)
    assert all(500_000 <= b <= 1_500_000 for _, b in a)


def test_phy_helpers():
    assert drxsim.select_tbs(1.0) == 249079
    assert drxsim.tb_outcome(1.0, 249079)
    assert not drxsim.tb_outcome(0.5, 249079)
    # scipy.special.j0(2 * pi * 10 * 3e9 / 2.998e8 * 1e-3)
    assert drxsim.rho_from_doppler(3e9, 10.0) == pytest.approx(0.9035873142385624, rel=1e-12)
    assert drxsim.huber(0.5) == 0.125 and drxsim.huber(2.0) == 1.5


def test_idle_drx_pattern():
    w = drxsim.drx_listening_trace(48)
    assert w == ([1] * 8 + [0] * 8) * 3


def test_config_text_round_trip_and_errors():
    cfg = drxsim.Config()
    cfg.seed = 42
    back = drxsim.Config.from_text(cfg.to_text())
    assert back.seed == 42 and back.to_text() == cfg.to_text()
    with pytest.raises(ValueError):
        drxsim.Config.from_text("no_such_key = 1\n")


def test_always_on_activity_is_one():
    rows = drxsim.evaluate(small_config(), "always_on", num_ues=2, episodes=2)
    assert len(rows) == 2
    assert all(r["activity"] == 1.0 for r in rows)


def test_train_and_evaluate_checkpoint(tmp_path):
    episodes, best, final = drxsim.train(small_config(), str(tmp_path))
    assert len(episodes) == 2
    assert all(math.isfinite(e["cum_reward_per_ue"]) for e in episodes)
    assert (tmp_path / "checkpoint_best.json").exists()
    loaded = drxsim.Checkpoint.load(str(tmp_path / "checkpoint_final.json"))
    assert loaded.net.params == final.net.params
    rows = drxsim.evaluate(small_config(), "rl", num_ues=1, episodes=1, checkpoint=best)
    assert 0.0 <= rows[0]["activity"] <= 1.0
