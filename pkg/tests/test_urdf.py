"""Tests for URDF parsing, the model writer round trip and SpatialInertia."""

import logging
import math

import numpy as np
import pytest

from dynsolve import (
    ModelError,
    ParseError,
    SpatialInertia,
    UnsupportedJointError,
    combine_inertias,
    model_to_urdf,
    parse_urdf,
)
from dynsolve.transforms import rpy_to_matrix

TWO_LINK = """
<robot name="mini">
  <link name="base_link"/>
  <link name="link1">
    <inertial>
      <mass value="1.0"/>
      <inertia ixx="0.1" ixy="0" ixz="0" iyy="0.1" iyz="0" izz="0.1"/>
    </inertial>
  </link>
  <joint name="j1" type="revolute">
    <parent link="base_link"/>
    <child link="link1"/>
    <axis xyz="0 0 1"/>
    <limit lower="-1" upper="1" effort="10" velocity="2"/>
  </joint>
</robot>
"""


class TestParse:
    def test_two_link_readback(self):
        model = parse_urdf(TWO_LINK)
        assert model.name == "mini"
        assert len(model.links) == 2
        assert len(model.joints) == 1
        joint = model.joints["j1"]
        assert joint.kind == "revolute"
        assert np.array_equal(joint.axis, [0.0, 0.0, 1.0])
        assert (joint.lower, joint.upper) == (-1.0, 1.0)
        assert model.links["link1"].inertial.mass == 1.0
        assert model.root_link == "base_link"

    def test_continuous_maps_to_unbounded_revolute(self):
        model = parse_urdf(TWO_LINK.replace('type="revolute"', 'type="continuous"'))
        joint = model.joints["j1"]
        assert joint.kind == "revolute"
        # limit element is still parsed for velocity/effort, but a
        # continuous joint has no position bounds
        assert joint.lower == -math.inf and joint.upper == math.inf

    def test_unknown_joint_type(self):
        bad = TWO_LINK.replace('type="revolute"', 'type="floating"')
        with pytest.raises(UnsupportedJointError, match="floating"):
            parse_urdf(bad)

    def test_dangling_child_reference(self):
        bad = TWO_LINK.replace('<child link="link1"/>', '<child link="ghost"/>')
        with pytest.raises(ModelError, match="ghost"):
            parse_urdf(bad)

    def test_cycle_rejected(self):
        cyclic = """
        <robot name="loop">
          <link name="a"/><link name="b"/>
          <joint name="ab" type="fixed"><parent link="a"/><child link="b"/></joint>
          <joint name="ba" type="fixed"><parent link="b"/><child link="a"/></joint>
        </robot>
        """
        with pytest.raises(ModelError):
            parse_urdf(cyclic)

    def test_multiple_roots_rejected(self):
        forest = """
        <robot name="forest">
          <link name="a"/><link name="b"/><link name="c"/>
          <joint name="ab" type="fixed"><parent link="a"/><child link="b"/></joint>
        </robot>
        """
        with pytest.raises(ModelError, match="multiple roots"):
            parse_urdf(forest)

    def test_duplicate_link_name(self):
        dup = TWO_LINK.replace('<link name="base_link"/>',
                               '<link name="base_link"/><link name="base_link"/>')
        with pytest.raises(ModelError, match="duplicate"):
            parse_urdf(dup)

    def test_malformed_xml_reports_line(self):
        with pytest.raises(ParseError, match="line"):
            parse_urdf("<robot name='x'>\n<link name='a'>\n</robot>")

    def test_wrong_root_element(self):
        with pytest.raises(ModelError, match="robot"):
            parse_urdf("<machine name='x'></machine>")

    def test_missing_inertial_defaults_to_zero(self):
        model = parse_urdf(TWO_LINK)
        base = model.links["base_link"].inertial
        assert base.mass == 0.0
        assert np.array_equal(base.com, np.zeros(3))
        assert np.array_equal(base.inertia, np.zeros((3, 3)))

    def test_rotated_inertial_frame(self):
        rpy = (0.3, -0.2, 0.9)
        text = TWO_LINK.replace(
            '<mass value="1.0"/>',
            f'<origin xyz="0.1 0.2 0.3" rpy="{rpy[0]} {rpy[1]} {rpy[2]}"/>'
            '<mass value="1.0"/>',
        )
        si = parse_urdf(text).links["link1"].inertial
        rot = rpy_to_matrix(rpy)
        np.testing.assert_allclose(si.com, [0.1, 0.2, 0.3])
        np.testing.assert_allclose(si.inertia, rot @ (0.1 * np.eye(3)) @ rot.T,
                                   atol=1e-15)

    def test_axis_normalized_with_warning(self, caplog):
        text = TWO_LINK.replace('xyz="0 0 1"', 'xyz="0 0 2"')
        with caplog.at_level(logging.WARNING, logger="dynsolve.urdf"):
            model = parse_urdf(text)
        assert np.array_equal(model.joints["j1"].axis, [0.0, 0.0, 1.0])
        assert any("normalizing" in r.message for r in caplog.records)

    def test_zero_axis_rejected(self):
        with pytest.raises(ModelError, match="axis"):
            parse_urdf(TWO_LINK.replace('xyz="0 0 1"', 'xyz="0 0 0"'))

    def test_negative_mass_rejected(self):
        with pytest.raises(ModelError, match="mass"):
            parse_urdf(TWO_LINK.replace('value="1.0"', 'value="-2"'))


class TestRoundTrip:
    VARIED = """
    <robot name="varied">
      <link name="world"/>
      <link name="a">
        <inertial>
          <origin xyz="0.05 -0.02 0.11" rpy="0.1 0.2 0.3"/>
          <mass value="2.5"/>
          <inertia ixx="0.04" ixy="0.001" ixz="-0.002" iyy="0.05" iyz="0.003" izz="0.06"/>
        </inertial>
      </link>
      <link name="b">
        <inertial><mass value="0.7"/>
          <inertia ixx="0.01" ixy="0" ixz="0" iyy="0.01" iyz="0" izz="0.01"/>
        </inertial>
      </link>
      <link name="c"/>
      <joint name="spin" type="continuous">
        <parent link="world"/><child link="a"/>
        <origin xyz="0 0 0.5" rpy="0 0 1.5707963267948966"/>
        <axis xyz="0 1 0"/>
      </joint>
      <joint name="slide" type="prismatic">
        <parent link="a"/><child link="b"/>
        <origin xyz="0.1 0.2 0.3" rpy="-0.4 0.5 -0.6"/>
        <axis xyz="1 0 0"/>
        <limit lower="-0.5" upper="0.5" effort="80" velocity="1.5"/>
      </joint>
      <joint name="mount" type="fixed">
        <parent link="b"/><child link="c"/>
        <origin xyz="0 0 0.07" rpy="0 0 0"/>
      </joint>
    </robot>
    """

    def test_write_then_parse_is_identity(self):
        model = parse_urdf(self.VARIED)
        again = parse_urdf(model_to_urdf(model))
        assert again == model

    def test_round_trip_is_stable(self):
        model = parse_urdf(self.VARIED)
        text = model_to_urdf(model)
        assert model_to_urdf(parse_urdf(text)) == text


class TestSpatialInertia:
    def test_symmetrized_on_construction(self):
        tensor = np.array([[1.0, 0.2, 0.0], [0.1, 1.0, 0.0], [0.0, 0.0, 1.0]])
        si = SpatialInertia(1.0, np.zeros(3), tensor)
        assert np.array_equal(si.inertia, si.inertia.T)
        np.testing.assert_allclose(si.inertia[0, 1], 0.15)

    def test_about_origin_parallel_axis(self):
        si = SpatialInertia(2.0, [0.0, 1.0, 0.0], np.zeros((3, 3)))
        # point mass 2 at y=1: Ixx = Izz = 2, Iyy = 0 about the origin
        np.testing.assert_allclose(si.about_origin(), np.diag([2.0, 0.0, 2.0]))

    def test_combine_point_masses(self):
        a = SpatialInertia(1.0, [1.0, 0.0, 0.0], np.zeros((3, 3)))
        b = SpatialInertia(1.0, [-1.0, 0.0, 0.0], np.zeros((3, 3)))
        both = combine_inertias([a, b])
        assert both.mass == 2.0
        np.testing.assert_allclose(both.com, np.zeros(3))
        # two unit masses at distance 1 from the shared COM
        np.testing.assert_allclose(both.inertia, np.diag([0.0, 2.0, 2.0]))

    def test_combine_zero_mass(self):
        zero = combine_inertias([SpatialInertia.zero(), SpatialInertia.zero()])
        assert zero.mass == 0.0
        np.testing.assert_allclose(zero.com, np.zeros(3))

    def test_transformed_rotates_com_and_tensor(self):
        si = SpatialInertia(1.0, [1.0, 0.0, 0.0], np.diag([1.0, 2.0, 3.0]))
        rot = rpy_to_matrix([0.0, 0.0, np.pi / 2])
        moved = si.transformed(rot, np.array([0.0, 0.0, 1.0]))
        np.testing.assert_allclose(moved.com, [0.0, 1.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(moved.inertia, np.diag([2.0, 1.0, 3.0]),
                                   atol=1e-15)
