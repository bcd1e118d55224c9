
from launch import LaunchDescription
from launch.actions import DeclareLaunchArgument, OpaqueFunction
from launch.conditions import IfCondition
from launch.substitutions import LaunchConfiguration
from launch_ros.actions import Node


def spawn_extra(context):
    return []


def generate_launch_description():
    return LaunchDescription([
        DeclareLaunchArgument('robot_ns', default_value='alpha'),
        DeclareLaunchArgument('use_backup', default_value='false'),
        Node(package='pkg', executable='runner', name='runner',
             namespace=LaunchConfiguration('robot_ns')),
        Node(package='pkg', executable='guard', name='guard',
             condition=IfCondition(LaunchConfiguration('use_backup'))),
        OpaqueFunction(function=spawn_extra),
    ])
