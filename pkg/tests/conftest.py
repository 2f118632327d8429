import numpy as np
import pytest

from dynsolve import extract_chain, parse_urdf

# Point mass 1 kg at (1, 0, 0) swinging about the base z-axis.
PENDULUM_URDF = """
<robot name="pendulum">
  <link name="base"/>
  <link name="arm">
    <inertial>
      <origin xyz="1 0 0" rpy="0 0 0"/>
      <mass value="1.0"/>
      <inertia ixx="0" ixy="0" ixz="0" iyy="0" iyz="0" izz="0"/>
    </inertial>
  </link>
  <joint name="shoulder" type="revolute">
    <parent link="base"/>
    <child link="arm"/>
    <origin xyz="0 0 0" rpy="0 0 0"/>
    <axis xyz="0 0 1"/>
    <limit lower="-3.14" upper="3.14" effort="100" velocity="10"/>
  </joint>
</robot>
"""

# Planar 2R arm: unit masses, unit link lengths, COM at each distal end.
TWOLINK_URDF = """
<robot name="twolink">
  <link name="base"/>
  <link name="link1">
    <inertial>
      <origin xyz="1 0 0" rpy="0 0 0"/>
      <mass value="1.0"/>
      <inertia ixx="0" ixy="0" ixz="0" iyy="0" iyz="0" izz="0"/>
    </inertial>
  </link>
  <link name="link2">
    <inertial>
      <origin xyz="1 0 0" rpy="0 0 0"/>
      <mass value="1.0"/>
      <inertia ixx="0" ixy="0" ixz="0" iyy="0" iyz="0" izz="0"/>
    </inertial>
  </link>
  <joint name="j1" type="revolute">
    <parent link="base"/>
    <child link="link1"/>
    <origin xyz="0 0 0" rpy="0 0 0"/>
    <axis xyz="0 0 1"/>
    <limit lower="-3.14" upper="3.14" effort="150" velocity="3"/>
  </joint>
  <joint name="j2" type="revolute">
    <parent link="link1"/>
    <child link="link2"/>
    <origin xyz="1 0 0" rpy="0 0 0"/>
    <axis xyz="0 0 1"/>
    <limit lower="-3.14" upper="3.14" effort="150" velocity="3"/>
  </joint>
</robot>
"""

# Gravity along -y keeps both planar fixtures in their motion plane.
GRAVITY = np.array([0.0, -9.81, 0.0])


@pytest.fixture(scope="session")
def pendulum_model():
    return parse_urdf(PENDULUM_URDF)


@pytest.fixture(scope="session")
def pendulum_chain(pendulum_model):
    return extract_chain(pendulum_model, "base", "arm")


@pytest.fixture(scope="session")
def twolink_model():
    return parse_urdf(TWOLINK_URDF)


@pytest.fixture(scope="session")
def twolink_chain(twolink_model):
    return extract_chain(twolink_model, "base", "link2")


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)
