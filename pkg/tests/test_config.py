import pytest

from fibresense import ConfigError, NoiseModel
from fibresense.config import load_config, parse_config


MINIMAL = "fiber:\n  d_mm: 0.9\n"


class TestDefaults:
    def test_minimal_document_gets_all_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.fiber_base.d == 0.9
        assert cfg.fiber_base.theta == 10.0
        assert cfg.fiber_base.coupler_factor == 0.5
        assert cfg.fiber_base.v_max == 5.0
        assert cfg.auto_k_v is True
        assert list(cfg.profiles) == ["default"]
        prof = cfg.profiles["default"]
        assert (prof.t_min, prof.t_max, prof.alpha) == (1.0, 5.0, 120.0)
        assert prof.surface.label == "silver-tape"
        assert cfg.noise is None
        assert cfg.standoff is None
        assert cfg.output_dir == "out"
        assert cfg.plot is True and cfg.png is False

    def test_empty_document_is_all_defaults(self):
        cfg = parse_config("")
        assert cfg.profiles["default"].t_max == 5.0

    def test_default_mount_tracks_profile(self):
        cfg = parse_config(MINIMAL)
        _, prof = cfg.profile()
        mount = cfg.mount_for(prof)
        assert mount.standoff == prof.t_max + 1.0
        assert mount.base_radius == 10.0

    def test_auto_gain_reaches_full_scale(self):
        from fibresense import theoretical_voltage
        cfg = parse_config(MINIMAL)
        _, prof = cfg.profile()
        mount = cfg.mount_for(prof)
        fiber = cfg.fiber_for(prof, mount)
        v = theoretical_voltage(fiber, mount.standoff - prof.t_max, prof.surface)
        assert v == pytest.approx(5.0, abs=1e-9)

    def test_explicit_k_v_disables_auto(self):
        cfg = parse_config("fiber:\n  k_v: 12.5\n")
        assert cfg.auto_k_v is False
        assert cfg.fiber_base.k_v == 12.5


class TestStrictness:
    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="unknown key: fibre"):
            parse_config("fibre:\n  d_mm: 0.9\n")

    def test_unknown_nested_key_named_by_path(self):
        with pytest.raises(ConfigError, match="unknown key: fiber.diametr"):
            parse_config("fiber:\n  diametr: 0.9\n")

    def test_unknown_profile_key(self):
        with pytest.raises(ConfigError, match="unknown key: profiles.p.thikness"):
            parse_config("profiles:\n  p:\n    thikness: 1.0\n")

    def test_profile_invariant_names_profile(self):
        text = "profiles:\n  bad:\n    t_min_mm: 5.0\n    t_max_mm: 1.0\n"
        with pytest.raises(ConfigError, match="profile 'bad'"):
            parse_config(text)

    def test_syntax_error_reports_line(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_config("fiber:\n  d_mm: 0.9\n   bad indent: [\n")

    def test_wrong_type_reports_key(self):
        with pytest.raises(ConfigError, match="fiber.d_mm"):
            parse_config("fiber:\n  d_mm: thick\n")
        with pytest.raises(ConfigError, match="output.plot"):
            parse_config("output:\n  plot: maybe\n")

    def test_bad_k_v_string(self):
        with pytest.raises(ConfigError, match="k_v"):
            parse_config("fiber:\n  k_v: automagic\n")


class TestSections:
    def test_noise_section_enables_noise(self):
        cfg = parse_config("noise:\n  sigma_v: 0.05\n  seed: 9\n")
        assert cfg.noise == NoiseModel(sigma_v=0.05, adc_step=5.0 / 1023.0, seed=9)

    def test_table_profile(self):
        text = ("profiles:\n  shaped:\n    surface: white-tape\n"
                "    table: [[0.0, 1.0], [40.0, 1.5], [120.0, 5.0]]\n")
        cfg = parse_config(text)
        prof = cfg.profiles["shaped"]
        assert prof.table == ((0.0, 1.0), (40.0, 1.5), (120.0, 5.0))
        assert prof.surface.reflectance == 0.80

    def test_table_and_geometry_conflict(self):
        text = ("profiles:\n  p:\n    t_min_mm: 1.0\n"
                "    table: [[0.0, 1.0], [120.0, 5.0]]\n")
        with pytest.raises(ConfigError, match="either table or"):
            parse_config(text)

    def test_unknown_surface_requires_reflectance(self):
        with pytest.raises(ConfigError, match="reflectance"):
            parse_config("profiles:\n  p:\n    surface: gold-leaf\n")
        cfg = parse_config(
            "profiles:\n  p:\n    surface: gold-leaf\n    reflectance: 0.99\n")
        assert cfg.profiles["p"].surface.reflectance == 0.99

    def test_sweep_section(self):
        text = ("sweep:\n  t_max_mm: [2.0, 5.0, 7]\n  objective: linearity\n"
                "  window_deg: [10.0, 110.0]\n")
        cfg = parse_config(text)
        assert cfg.sweep.t_max == (2.0, 5.0, 7)
        assert cfg.sweep.objective == "linearity"
        assert cfg.sweep.window == (10.0, 110.0)
        space = cfg.design_space()
        assert space.t_max == (2.0, 5.0, 7)

    def test_sweep_rejects_unknown_objective(self):
        with pytest.raises(ConfigError, match="unknown objective"):
            parse_config("sweep:\n  objective: sharpness\n")

    def test_fixed_axis_shorthand(self):
        cfg = parse_config("sweep:\n  alpha_deg: 140.0\n")
        assert cfg.sweep.alpha == (140.0, 140.0, 1)

    def test_chain_requires_defined_profiles(self):
        text = ("chain:\n  links:\n    - length_mm: 30.0\n      profile: ghost\n")
        with pytest.raises(ConfigError, match="ghost"):
            parse_config(text)

    def test_chain_parses_links(self):
        text = ("chain:\n  base_pose: [1.0, 2.0, 90.0]\n  links:\n"
                "    - length_mm: 30.0\n      window_deg: [0.0, 60.0]\n"
                "    - length_mm: 25.0\n      order: 3\n")
        cfg = parse_config(text)
        assert cfg.chain.base_pose == (1.0, 2.0, 90.0)
        assert cfg.chain.links[0].window == (0.0, 60.0)
        assert cfg.chain.links[1].order == 3

    def test_chain_link_needs_length(self):
        with pytest.raises(ConfigError, match="length_mm"):
            parse_config("chain:\n  links:\n    - profile: default\n")

    def test_reconstruct_without_chain_section(self):
        cfg = parse_config(MINIMAL)
        with pytest.raises(ConfigError, match="chain"):
            cfg.joint_chain()

    def test_profile_selection(self):
        cfg = parse_config("profiles:\n  a: {}\n  b: {}\n")
        with pytest.raises(ConfigError, match="select one"):
            cfg.profile()
        name, _ = cfg.profile("a")
        assert name == "a"
        with pytest.raises(ConfigError, match="not defined"):
            cfg.profile("zz")


class TestLoadConfig:
    def test_reads_from_disk_with_base_dir(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text(MINIMAL, encoding="utf-8")
        cfg = load_config(path)
        assert cfg.base_dir == tmp_path
