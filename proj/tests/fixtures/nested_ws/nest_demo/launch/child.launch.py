from launch import LaunchDescription
from launch.actions import GroupAction
from launch_ros.actions import Node, PushRosNamespace


def generate_launch_description():
    return LaunchDescription([
        GroupAction([
            PushRosNamespace('main'),
            Node(package='nest_demo', executable='worker_exec', name='Tom'),
        ]),
    ])
