import rclpy
from rclpy.node import Node
from vision_msgs.msg import Detection2DArray
from geometry_msgs.msg import PoseArray, Pose
from diagnostic_msgs.msg import DiagnosticArray


class PoseEstimatorNode(Node):
    """Lifts 2D parcel detections to grasp poses, sorted by stack height."""

    def __init__(self):
        super().__init__('pose_estimator')
        self.detections_sub = self.create_subscription(
            Detection2DArray, 'detections', self.on_detections, 10)
        self.poses_pub = self.create_publisher(PoseArray, 'parcel_poses', 10)
        self.diag_pub = self.create_publisher(DiagnosticArray, 'pose_diagnostics', 10)

    def on_detections(self, msg):
        poses = PoseArray()
        poses.header = msg.header
        for detection in msg.detections:
            poses.poses.append(self.lift(detection))
        poses.poses.sort(key=self.stack_height, reverse=True)
        self.poses_pub.publish(poses)
        self.diag_pub.publish(self.health_report(len(poses.poses)))

    def lift(self, detection):
        pose = Pose()
        pose.orientation.w = 1.0
        return pose

    def stack_height(self, pose):
        return pose.position.z

    def health_report(self, count):
        report = DiagnosticArray()
        return report


def main(args=None):
    rclpy.init(args=args)
    node = PoseEstimatorNode()
    rclpy.spin(node)
    node.destroy_node()
    rclpy.shutdown()
